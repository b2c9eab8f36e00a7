#include "khdet/cube.hpp"

#include <algorithm>
#include <bit>

namespace khdet {

int ResolutionState::circle_containing(int edge) const {
  for (int i = 0; i < circle_count(); ++i)
    for (int e : circles[i])
      if (e == edge) return i;
  throw validation_error("edge " + std::to_string(edge) + " not on any circle");
}

ResolutionState resolve(const Diagram& d, uint32_t bits) {
  const int c = static_cast<int>(d.crossing_count());
  if (c < 32 && (bits >> c) != 0)
    throw validation_error("resolution word longer than the crossing count");

  ResolutionState rs;
  rs.bits = bits;
  rs.weight = std::popcount(bits);

  if (c == 0) {
    rs.circles = {{d.basepoint_edge}};
    return rs;
  }

  // Smoothing joins at slot granularity: 0-resolution pairs slots (0,1),(2,3);
  // 1-resolution pairs (0,3),(1,2). join[slot] is the partner slot.
  std::vector<int> join(4 * c);
  for (int k = 0; k < c; ++k) {
    if ((bits >> k) & 1) {
      join[4 * k + 0] = 4 * k + 3;
      join[4 * k + 3] = 4 * k + 0;
      join[4 * k + 1] = 4 * k + 2;
      join[4 * k + 2] = 4 * k + 1;
    } else {
      join[4 * k + 0] = 4 * k + 1;
      join[4 * k + 1] = 4 * k + 0;
      join[4 * k + 2] = 4 * k + 3;
      join[4 * k + 3] = 4 * k + 2;
    }
  }

  // through[slot] = the other slot of the same edge.
  std::vector<int> through(4 * c, -1);
  auto slots = edge_slots(d);
  for (int e = 1; e <= d.edge_count; ++e) {
    const int s0 = 4 * slots[e][0].crossing + slots[e][0].pos;
    const int s1 = 4 * slots[e][1].crossing + slots[e][1].pos;
    through[s0] = s1;
    through[s1] = s0;
  }

  std::vector<char> seen(d.edge_count + 1, 0);
  for (int e0 = 1; e0 <= d.edge_count; ++e0) {
    if (seen[e0]) continue;
    std::vector<int> cyc;
    int slot = 4 * slots[e0][0].crossing + slots[e0][0].pos;
    int edge = e0;
    do {
      cyc.push_back(edge);
      seen[edge] = 1;
      const int other = through[slot];
      const int next_slot = join[other];
      const int k = next_slot / 4;
      edge = d.crossings[k].e[next_slot % 4];
      slot = next_slot;
    } while (edge != e0);
    // Canonical form: minimum edge first, then the lex-smaller direction.
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
    if (cyc.size() > 2 && cyc[1] > cyc.back())
      std::reverse(cyc.begin() + 1, cyc.end());
    rs.circles.push_back(std::move(cyc));
  }
  std::sort(rs.circles.begin(), rs.circles.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return rs;
}

EdgeTransition transition(const Diagram& d, const ResolutionState& s, int crossing) {
  if ((s.bits >> crossing) & 1)
    throw validation_error("transition requires bit 0 at the flipped crossing");

  EdgeTransition t;
  t.from_state = s.bits;
  t.flipped_crossing = crossing;

  const auto& e = d.crossings[crossing].e;
  // 0-resolution circles through this crossing: a-b on one, c-d on the other
  // (possibly the same circle, in which case the flip splits it).
  const int ca = s.circle_containing(e[0]);
  const int cc = s.circle_containing(e[2]);

  ResolutionState target = resolve(d, s.bits | (uint32_t{1} << crossing));
  const int dc = target.circle_count() - s.circle_count();
  if (dc != 1 && dc != -1)
    throw validation_error("cube edge changed the circle count by " + std::to_string(dc));

  if (ca == cc) {
    t.kind = TransitionKind::split;
    if (dc != 1) throw validation_error("split must raise the circle count by 1");
    t.in_a = s.circle_key(ca);
    t.out_a = target.circle_key(target.circle_containing(e[0]));
    t.out_b = target.circle_key(target.circle_containing(e[1]));
    if (t.out_a == t.out_b) throw validation_error("split produced a single circle");
  } else {
    t.kind = TransitionKind::merge;
    if (dc != -1) throw validation_error("merge must lower the circle count by 1");
    t.in_a = s.circle_key(ca);
    t.in_b = s.circle_key(cc);
    t.out_a = target.circle_key(target.circle_containing(e[0]));
  }
  return t;
}

std::vector<uint32_t> gray_states(int crossing_count) {
  std::vector<uint32_t> states;
  states.reserve(std::size_t{1} << crossing_count);
  for (uint32_t n = 0; n < (uint32_t{1} << crossing_count); ++n)
    states.push_back(n ^ (n >> 1));
  return states;
}

}  // namespace khdet
