#include "khdet/pd.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "khdet/proto.hpp"
#include "khdet/util.hpp"

namespace khdet {

int Diagram::succ(int edge) const {
  for (auto [lo, hi] : component_ranges)
    if (edge >= lo && edge <= hi) return edge == hi ? lo : edge + 1;
  throw validation_error("edge " + std::to_string(edge) + " outside any component range");
}

int Diagram::n_plus() const {
  int n = 0;
  for (const auto& c : crossings) n += c.sign > 0;
  return n;
}

int Diagram::n_minus() const {
  int n = 0;
  for (const auto& c : crossings) n += c.sign < 0;
  return n;
}

Diagram unknot() { return Diagram{}; }

Diagram make_diagram(std::vector<std::array<int, 4>> tuples, int basepoint) {
  Diagram d;
  if (tuples.empty()) {
    if (basepoint != 1) throw validation_error("unknot diagram has only edge 1");
    return d;
  }
  const int n_edges = static_cast<int>(2 * tuples.size());

  std::vector<int> occurrences(n_edges + 1, 0);
  for (const auto& t : tuples)
    for (int e : t) {
      if (e < 1 || e > n_edges)
        throw validation_error("edge " + std::to_string(e) + " out of range 1.." +
                               std::to_string(n_edges));
      ++occurrences[e];
    }
  for (int e = 1; e <= n_edges; ++e)
    if (occurrences[e] != 2)
      throw validation_error("edge " + std::to_string(e) + " appears " +
                             std::to_string(occurrences[e]) + " times, expected 2");

  // Components: the two passes {a,c} and {b,d} of each crossing are strands.
  DisjointSets ds(n_edges + 1);
  for (const auto& t : tuples) {
    ds.unite(t[0], t[2]);
    ds.unite(t[1], t[3]);
  }
  std::map<int, std::vector<int>> classes;
  for (int e = 1; e <= n_edges; ++e) classes[ds.find(e)].push_back(e);
  d.component_ranges.clear();
  for (auto& [root, edges] : classes) {
    (void)root;
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i] != edges[i - 1] + 1)
        throw validation_error("component edges are not numbered consecutively near edge " +
                               std::to_string(edges[i]));
    d.component_ranges.emplace_back(edges.front(), edges.back());
  }
  std::sort(d.component_ranges.begin(), d.component_ranges.end());
  d.component_count = static_cast<int>(d.component_ranges.size());
  d.edge_count = n_edges;

  if (basepoint < 1 || basepoint > n_edges)
    throw validation_error("basepoint edge " + std::to_string(basepoint) + " is not a valid edge");
  d.basepoint_edge = basepoint;

  // Orientation consistency. Tuple position 0 declares the incoming
  // under-strand; over-strand arrivals are inferred globally, since every
  // edge arrives at exactly one of its two slots. A 2-edge component seen
  // only as an over-strand is genuinely ambiguous from the numbering; the
  // leftover choice below is canonical and only shifts link gradings.
  const int n_slots = static_cast<int>(4 * tuples.size());
  std::vector<std::pair<int, int>> occ(n_edges + 1, {-1, -1});  // slot ids
  for (int k = 0; k < static_cast<int>(tuples.size()); ++k)
    for (int p = 0; p < 4; ++p) {
      const int e = tuples[k][p];
      (occ[e].first == -1 ? occ[e].first : occ[e].second) = 4 * k + p;
    }

  std::vector<signed char> arrives(n_slots, -1);  // -1 unknown, 0 departs, 1 arrives
  std::vector<int> worklist;
  auto assign = [&](int slot, signed char val, auto&& self) -> void {
    if (arrives[slot] != -1) {
      if (arrives[slot] != val) throw validation_error("broken orientation cycle");
      return;
    }
    arrives[slot] = val;
    const int e = tuples[slot / 4][slot % 4];
    const int other = occ[e].first == slot ? occ[e].second : occ[e].first;
    if (arrives[other] == -1) self(other, static_cast<signed char>(1 - val), self);
    else if (arrives[other] == val) throw validation_error("broken orientation cycle");
    // The strand partner slot (s+2 mod 4) carries the opposite role.
    const int partner = 4 * (slot / 4) + (slot % 4 + 2) % 4;
    if (arrives[partner] == -1) self(partner, static_cast<signed char>(1 - val), self);
    else if (arrives[partner] == val) throw validation_error("broken orientation cycle");
  };
  for (int k = 0; k < static_cast<int>(tuples.size()); ++k)
    assign(4 * k + 0, 1, assign);
  for (int s = 0; s < n_slots; ++s) {
    if (arrives[s] != -1) continue;
    // Seed by the successor relation at this pass; an ambiguous pass (2-edge
    // component) defaults to arriving here.
    const int partner = 4 * (s / 4) + (s % 4 + 2) % 4;
    const int u = tuples[s / 4][s % 4], v = tuples[s / 4][partner % 4];
    if (d.succ(u) == v)
      assign(s, 1, assign);
    else if (d.succ(v) == u)
      assign(s, 0, assign);
    else
      throw validation_error("broken orientation cycle: strand {" + std::to_string(u) + "," +
                             std::to_string(v) + "}");
  }

  // Every pass must step to the successor edge.
  for (int k = 0; k < static_cast<int>(tuples.size()); ++k) {
    for (int p : {0, 1}) {
      const int s = 4 * k + p, t = 4 * k + p + 2;
      const int in_slot = arrives[s] == 1 ? s : t;
      const int out_slot = arrives[s] == 1 ? t : s;
      const int u = tuples[k][in_slot % 4], v = tuples[k][out_slot % 4];
      if (d.succ(u) != v)
        throw validation_error("broken orientation cycle: strand " + std::to_string(u) +
                               " -> " + std::to_string(v));
    }
  }

  d.crossings.reserve(tuples.size());
  for (int k = 0; k < static_cast<int>(tuples.size()); ++k) {
    Crossing x;
    x.e = tuples[k];
    x.sign = arrives[4 * k + 3] == 1 ? +1 : -1;  // positive: over enters at d
    d.crossings.push_back(x);
  }
  return d;
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw parse_error(std::string("expected '") + c + "' " + what, i);
  }
  int number() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw parse_error("expected a positive integer edge label", i);
    long v = std::stol(s.substr(start, i - start));
    if (v < 1) throw parse_error("edge labels are positive", start);
    return static_cast<int>(v);
  }
  bool keyword(const char* kw) {
    skip_ws();
    std::size_t n = std::string(kw).size();
    if (s.compare(i, n, kw) == 0) {
      i += n;
      return true;
    }
    return false;
  }
};

}  // namespace

Diagram parse_pd(const std::string& text) {
  Parser p{text};
  int basepoint = -1;
  std::vector<std::array<int, 4>> tuples;
  bool is_unknot = false;

  if (p.keyword("PD")) {
    p.expect('[', "after PD");
    p.skip_ws();
    if (p.eat(']')) {
      throw parse_error("empty PD denotes nothing; the unknot is the explicit token \"U\"",
                        p.i ? p.i - 1 : 0);
    }
    for (;;) {
      if (!p.keyword("X")) throw parse_error("expected crossing 'X(a,b,c,d)'", p.i);
      p.expect('(', "after X");
      std::array<int, 4> t{};
      for (int k = 0; k < 4; ++k) {
        t[k] = p.number();
        if (k < 3) p.expect(',', "between edge labels");
      }
      p.expect(')', "closing crossing");
      tuples.push_back(t);
      if (p.eat(',')) continue;
      p.expect(']', "closing PD");
      break;
    }
  } else if (p.keyword("U")) {
    is_unknot = true;
  } else {
    throw parse_error("expected 'PD[...]' or 'U'", p.i);
  }

  p.skip_ws();
  if (p.keyword("base")) {
    p.expect('=', "after base");
    basepoint = p.number();
  }
  p.skip_ws();
  if (p.i != text.size()) throw parse_error("trailing input", p.i);

  if (is_unknot) {
    if (basepoint > 1) throw parse_error("unknot has only edge 1", text.size());
    return unknot();
  }
  return make_diagram(std::move(tuples), basepoint < 0 ? 1 : basepoint);
}

std::string serialize(const Diagram& d) {
  std::string out;
  if (d.is_unknot_diagram()) {
    out = "U";
  } else {
    out = "PD[";
    for (std::size_t k = 0; k < d.crossings.size(); ++k) {
      const auto& t = d.crossings[k].e;
      out += "X(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
             std::to_string(t[2]) + "," + std::to_string(t[3]) + ")";
      if (k + 1 < d.crossings.size()) out += ",";
    }
    out += "]";
  }
  out += " base=" + std::to_string(d.basepoint_edge);
  return out;
}

int writhe(const Diagram& d) {
  int w = 0;
  for (const auto& c : d.crossings) w += c.sign;
  return w;
}

Diagram mirror(const Diagram& d) {
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(d.crossings.size());
  for (const auto& c : d.crossings) {
    const auto& t = c.e;
    // Over/under swap: restart the tuple at the old incoming over edge.
    if (c.sign > 0)
      tuples.push_back({t[3], t[0], t[1], t[2]});
    else
      tuples.push_back({t[1], t[2], t[3], t[0]});
  }
  return make_diagram(std::move(tuples), d.basepoint_edge);
}

Diagram reverse(const Diagram& d) {
  if (d.component_count != 1) throw validation_error("reverse requires a single component");
  if (d.is_unknot_diagram()) return d;
  const int n = d.edge_count;
  auto relabel = [n](int e) { return n + 1 - e; };
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(d.crossings.size());
  for (const auto& c : d.crossings) {
    const auto& t = c.e;
    tuples.push_back({relabel(t[2]), relabel(t[3]), relabel(t[0]), relabel(t[1])});
  }
  return make_diagram(std::move(tuples), relabel(d.basepoint_edge));
}

Diagram connected_sum(const Diagram& a, const Diagram& b) {
  if (a.component_count != 1 || b.component_count != 1)
    throw validation_error("connected sum requires single-component diagrams");
  if (b.is_unknot_diagram()) return a;
  if (a.is_unknot_diagram()) return b;

  ProtoDiagram proto;
  // Crossings of a first, then b; tuple positions become slots directly.
  auto slots_a = edge_slots(a);
  auto slots_b = edge_slots(b);
  const int off = static_cast<int>(a.crossing_count());
  for (std::size_t k = 0; k < a.crossing_count() + b.crossing_count(); ++k) proto.add_crossing();

  auto tail_head = [](const Diagram& d, const std::vector<std::vector<EdgeSlot>>& slots, int e,
                      int crossing_offset) {
    ProtoPort tail{}, head{};
    for (const auto& s : slots[e]) {
      ProtoPort p{s.crossing + crossing_offset, s.pos};
      if (slot_incoming(d, s.crossing, s.pos))
        head = p;
      else
        tail = p;
    }
    return std::pair{tail, head};
  };

  ProtoPort start_port{};
  for (int e = 1; e <= a.edge_count; ++e) {
    auto [tail, head] = tail_head(a, slots_a, e, 0);
    if (e == a.basepoint_edge) {
      auto [tail_b, head_b] = tail_head(b, slots_b, b.basepoint_edge, off);
      proto.connect(tail, head_b);   // leave a, enter b
      proto.connect(tail_b, head);   // leave b, come back
      start_port = tail;
    } else {
      proto.connect(tail, head);
    }
  }
  for (int e = 1; e <= b.edge_count; ++e) {
    if (e == b.basepoint_edge) continue;
    auto [tail, head] = tail_head(b, slots_b, e, off);
    proto.connect(tail, head);
  }
  // Start numbering on the spliced basepoint arc so the new basepoint is
  // edge 1, the surviving piece of a's basepoint edge.
  return proto.to_diagram(start_port);
}

Diagram with_basepoint(const Diagram& d, int edge) {
  if (edge < 1 || edge > d.edge_count)
    throw validation_error("basepoint edge " + std::to_string(edge) + " is not a valid edge");
  Diagram out = d;
  out.basepoint_edge = edge;
  return out;
}

std::vector<std::vector<EdgeSlot>> edge_slots(const Diagram& d) {
  std::vector<std::vector<EdgeSlot>> slots(d.edge_count + 1);
  for (std::size_t k = 0; k < d.crossings.size(); ++k)
    for (int pos = 0; pos < 4; ++pos)
      slots[d.crossings[k].e[pos]].push_back({static_cast<int>(k), pos});
  return slots;
}

bool slot_incoming(const Diagram& d, int crossing, int pos) {
  const int sign = d.crossings[crossing].sign;
  switch (pos) {
    case 0: return true;
    case 2: return false;
    case 1: return sign < 0;
    default: return sign > 0;
  }
}

}  // namespace khdet
