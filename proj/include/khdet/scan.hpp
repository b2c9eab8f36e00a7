#pragma once

#include "khdet/complex.hpp"

namespace khdet {

// Scanning computation of the same rank tables as the naive cube: crossings
// are attached one at a time, closed circles are delooped on the spot, and
// invertible differential entries are cancelled, keeping the intermediate
// complex small. Output is required to match homology(build_complex(..)).
RankTable homology_fast(const Diagram& d, bool reduced);

}  // namespace khdet
