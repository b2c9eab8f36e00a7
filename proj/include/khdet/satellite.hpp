#pragma once

#include "khdet/pd.hpp"

namespace khdet {

// The twisted satellite family: two parallel copies of the companion diagram
// closed through a region of half_twists half twists. half_twists = 0 gives
// the unknot pattern, +-1 the (2,+-1)-cable, +-2 the clasped untwisted
// double.
struct PatternSpec {
  int half_twists = 0;
};

// Number of signed full twists inserted to correct the blackboard framing to
// the Seifert framing: -writhe(companion).
int framing_twists(const Diagram& companion);

// Doubles every companion edge, turns every companion crossing into four,
// inserts |framing_twists| full twists (two crossings each) and the
// |half_twists| clasp crossings along the companion's basepoint edge.
// Crossing count: 4c + 2|writhe| + |half_twists|. Edge numbering comes from
// a deterministic strand trace, so output is reproducible byte for byte.
Diagram build_satellite(const Diagram& companion, const PatternSpec& pattern);

}  // namespace khdet
