#include "khdet/gen.hpp"

#include <cstdlib>
#include <numeric>
#include <optional>

#include "khdet/proto.hpp"

namespace khdet {

namespace {

// Compass slot tables. Each entry lists which compass corner sits at slot
// 0..3 so that the under-strand occupies slots {0,2} and the order is
// counterclockwise in the plane.
enum Corner { NE = 0, NW = 1, SW = 2, SE = 3 };

struct SlotTable {
  int slot_of[4];  // corner -> slot
};

constexpr SlotTable kUnderNEtoSW{{0, 1, 2, 3}};  // (NE,NW,SW,SE): under NE-SW
constexpr SlotTable kUnderNWtoSE{{3, 0, 1, 2}};  // (NW,SW,SE,NE): under NW-SE
constexpr SlotTable kUnderSWtoNE{{2, 3, 0, 1}};  // (SW,SE,NE,NW): under SW-NE

ProtoPort port(int crossing, const SlotTable& t, Corner c) {
  return {crossing, t.slot_of[c]};
}

}  // namespace

Diagram braid_closure(const std::vector<int>& word, int strands) {
  if (strands < 2) throw validation_error("braid closure needs at least 2 strands");
  if (word.empty()) throw validation_error("braid word is empty");

  ProtoDiagram proto;
  std::vector<std::optional<ProtoPort>> pending(strands + 1), first(strands + 1);

  auto feed = [&](int pos, ProtoPort in) {
    if (pending[pos])
      proto.connect(*pending[pos], in);
    else
      first[pos] = in;
  };

  for (int letter : word) {
    const int j = std::abs(letter);
    if (j < 1 || j + 1 > strands) throw validation_error("braid letter out of range");
    const SlotTable& t = letter > 0 ? kUnderNEtoSW : kUnderNWtoSE;
    const int k = proto.add_crossing();
    feed(j, port(k, t, NW));
    feed(j + 1, port(k, t, NE));
    pending[j] = port(k, t, SW);
    pending[j + 1] = port(k, t, SE);
  }
  for (int pos = 1; pos <= strands; ++pos) {
    if (!first[pos])
      throw validation_error("braid position " + std::to_string(pos) + " has no crossings");
    proto.connect(*pending[pos], *first[pos]);
  }

  Diagram d = proto.to_diagram();
  if (d.component_count != 1) throw validation_error("braid closure is not a knot");
  return d;
}

std::pair<long long, long long> rational_fraction(const std::vector<int>& cf) {
  if (cf.empty()) throw validation_error("empty continued fraction");
  long long p = cf[0], q = 1;
  for (std::size_t i = 1; i < cf.size(); ++i) {
    // x -> a + 1/x
    long long np = cf[i] * p + q;
    q = p;
    p = np;
  }
  long long g = std::gcd(p, q);
  return {p / g, q / g};
}

Diagram rational_knot(const std::vector<int>& cf) {
  for (int a : cf)
    if (a < 1) throw validation_error("continued-fraction entries must be positive");
  auto [p, q] = rational_fraction(cf);
  (void)q;
  if (p % 2 == 0)
    throw validation_error("even-determinant fraction closes to a 2-component link");

  ProtoDiagram proto;
  // Tangle terminals 0=NW,1=NE,2=SW,3=SE. Each is an open proto port, or is
  // still directly paired with its initial partner strand.
  std::optional<ProtoPort> term[4];
  int paired_with[4] = {1, 0, 3, 2};

  auto consume = [&](int i, ProtoPort in) {
    if (term[i]) {
      proto.connect(*term[i], in);
    } else {
      // The straight strand from the partner now ends at `in`.
      term[paired_with[i]] = in;
    }
    term[i].reset();
    paired_with[i] = -1;
  };

  for (std::size_t block = 0; block < cf.size(); ++block) {
    const bool horizontal = block % 2 == 0;
    for (int j = 0; j < cf[block]; ++j) {
      const int k = proto.add_crossing();
      if (horizontal) {
        const SlotTable& t = kUnderNWtoSE;
        consume(1, port(k, t, NW));  // NE end
        consume(3, port(k, t, SW));  // SE end
        term[1] = port(k, t, NE);
        term[3] = port(k, t, SE);
      } else {
        const SlotTable& t = kUnderNWtoSE;
        consume(2, port(k, t, NW));  // SW end
        consume(3, port(k, t, NE));  // SE end
        term[2] = port(k, t, SW);
        term[3] = port(k, t, SE);
      }
    }
  }
  auto close = [&](int i, int j) {
    if (!term[i] || !term[j])
      throw validation_error("rational tangle closure hit an unused strand");
    proto.connect(*term[i], *term[j]);
  };
  if (cf.size() % 2 == 1) {
    // Last block horizontal: numerator closure NW-NE, SW-SE.
    close(0, 1);
    close(2, 3);
  } else {
    // Last block vertical inverts the tangle fraction; the denominator
    // closure NW-SW, NE-SE restores the numerator p.
    close(0, 2);
    close(1, 3);
  }

  Diagram d = proto.to_diagram();
  if (d.component_count != 1) throw validation_error("rational closure is not a knot");
  return d;
}

Diagram pretzel(const std::vector<int>& params) {
  if (params.size() < 2) throw validation_error("pretzel needs at least two twist stacks");
  for (int p : params)
    if (p == 0) throw validation_error("pretzel stacks must have at least one crossing");

  ProtoDiagram proto;
  struct Stack {
    ProtoPort top_l, top_r, bot_l, bot_r;
  };
  std::vector<Stack> stacks;
  for (int p : params) {
    const SlotTable& t = p > 0 ? kUnderNEtoSW : kUnderNWtoSE;
    Stack s{};
    ProtoPort prev_l{}, prev_r{};
    for (int j = 0; j < std::abs(p); ++j) {
      const int k = proto.add_crossing();
      if (j == 0) {
        s.top_l = port(k, t, NW);
        s.top_r = port(k, t, NE);
      } else {
        proto.connect(prev_l, port(k, t, NW));
        proto.connect(prev_r, port(k, t, NE));
      }
      prev_l = port(k, t, SW);
      prev_r = port(k, t, SE);
    }
    s.bot_l = prev_l;
    s.bot_r = prev_r;
    stacks.push_back(s);
  }
  for (std::size_t i = 0; i + 1 < stacks.size(); ++i) {
    proto.connect(stacks[i].top_r, stacks[i + 1].top_l);
    proto.connect(stacks[i].bot_r, stacks[i + 1].bot_l);
  }
  proto.connect(stacks.front().top_l, stacks.back().top_r);
  proto.connect(stacks.front().bot_l, stacks.back().bot_r);

  Diagram d = proto.to_diagram();
  if (d.component_count != 1) throw validation_error("pretzel closure is not a knot");
  return d;
}

}  // namespace khdet
