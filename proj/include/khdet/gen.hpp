#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "khdet/pd.hpp"

namespace khdet {

// Closure of a braid word on `strands` strands. Letters are +/-i for a
// crossing between positions i and i+1 (1-based); the sign picks which
// strand goes over. Every position must be touched by at least one letter
// and the closure must be a knot.
Diagram braid_closure(const std::vector<int>& word, int strands);

// 4-plat diagram of the 2-bridge knot given by a continued-fraction vector
// (all entries positive). The fraction p/q determines the knot; p must be
// odd or the closure is a 2-component link and is rejected.
Diagram rational_knot(const std::vector<int>& cf);

// Numerator continued fraction: [a1,...,am] -> am + 1/(a_{m-1} + 1/(...)).
std::pair<long long, long long> rational_fraction(const std::vector<int>& cf);

// Pretzel diagram P(p1,...,pk): vertical twist stacks of |pi| crossings with
// handedness sign(pi), closed by the two horizontal bus strands.
Diagram pretzel(const std::vector<int>& params);

}  // namespace khdet
