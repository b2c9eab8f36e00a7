#pragma once

// Test-only oracles, kept independent of the engine paths they check:
// a Kauffman-bracket state sum for the Jones polynomial, a Goeritz-matrix
// determinant from a checkerboard coloring, a plain boolean-grid rank, and
// small diagram utilities for property tests.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "khdet/invariants.hpp"
#include "khdet/pd.hpp"

namespace khdet::oracle {

// V_K(q^2) via the Kauffman bracket state sum; matches the reduced graded
// Euler characteristic in the engine's conventions.
LaurentPoly kauffman_jones(const Diagram& d);

// |det G'| from a checkerboard coloring of the faces of the PD code.
long long goeritz_determinant(const Diagram& d);

// Gaussian elimination on an unpacked boolean grid.
std::size_t naive_rank(const std::vector<std::vector<bool>>& m);

// Resolves one crossing of d. Returns the resulting diagram (re-traced and
// renumbered) plus the number of crossing-free circles split off, which PD
// notation cannot carry.
struct Smoothed {
  std::optional<Diagram> diagram;  // absent when nothing but circles remain
  int free_circles = 0;
};
Smoothed smooth_crossing(const Diagram& d, int crossing, int resolution);

// Random valid knot diagrams (braid closures) with at most max_crossings
// crossings, deterministic in the seed.
std::vector<Diagram> random_knots(int count, int max_crossings, uint32_t seed);

}  // namespace khdet::oracle
