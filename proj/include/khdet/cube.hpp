#pragma once

#include <cstdint>
#include <vector>

#include "khdet/pd.hpp"

namespace khdet {

// One vertex of the resolution cube {0,1}^c: bit k = 1 means crossing k got
// the 1-smoothing. Circles are cyclic edge sequences, canonically rotated to
// start at their minimum edge and sorted by that key.
struct ResolutionState {
  uint32_t bits = 0;
  int weight = 0;
  std::vector<std::vector<int>> circles;

  int circle_count() const { return static_cast<int>(circles.size()); }
  int circle_key(int idx) const { return circles[idx][0]; }
  int circle_containing(int edge) const;
};

enum class TransitionKind { merge, split };

// Cube edge: flipping crossing `flipped_crossing` from 0 to 1. Circles are
// identified by their minimum-edge keys.
struct EdgeTransition {
  uint32_t from_state = 0;
  int flipped_crossing = -1;
  TransitionKind kind = TransitionKind::merge;
  // merge: {in_a, in_b} -> out_a ; split: in_a -> {out_a, out_b}
  int in_a = 0, in_b = 0;
  int out_a = 0, out_b = 0;
};

// 0-resolution of X(a,b,c,d) joins a-b and c-d; 1-resolution joins a-d, b-c.
ResolutionState resolve(const Diagram& d, uint32_t bits);

EdgeTransition transition(const Diagram& d, const ResolutionState& s, int crossing);

// All 2^c states in Gray-code enumeration order.
std::vector<uint32_t> gray_states(int crossing_count);

}  // namespace khdet
