#include <bit>

#include "doctest.h"
#include "khdet/cube.hpp"
#include "khdet/gen.hpp"
#include "oracles.hpp"

using namespace khdet;

namespace {
const char* kTrefoil = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
}

TEST_CASE("trefoil resolutions: circle counts at the cube corners") {
  Diagram d = parse_pd(kTrefoil);
  // Hand trace with the stated joining rule: the all-0 corner joins
  // {1,4},{2,5},{3,6}; the all-1 corner chains the edges into two circles.
  CHECK(resolve(d, 0b000).circle_count() == 3);
  CHECK(resolve(d, 0b111).circle_count() == 2);
  CHECK(resolve(d, 0b100).circle_count() == 2);
  CHECK(resolve(d, 0b110).circle_count() == 1);
  CHECK(resolve(unknot(), 0).circle_count() == 1);
  CHECK(resolve(unknot(), 0).circles[0] == std::vector<int>{1});
}

TEST_CASE("resolution circles partition the edges") {
  for (const Diagram& d : oracle::random_knots(10, 7, 99)) {
    const int c = static_cast<int>(d.crossing_count());
    for (uint32_t bits = 0; bits < (uint32_t{1} << c); ++bits) {
      ResolutionState rs = resolve(d, bits);
      std::vector<int> seen(d.edge_count + 1, 0);
      for (const auto& circ : rs.circles)
        for (int e : circ) ++seen[e];
      for (int e = 1; e <= d.edge_count; ++e) CHECK(seen[e] == 1);
      CHECK(rs.weight == std::popcount(bits));
    }
  }
}

TEST_CASE("circle partition is independent of crossing enumeration order") {
  Diagram d = parse_pd(kTrefoil);
  // Same diagram with the crossing list rotated.
  Diagram d2 = parse_pd("PD[X(3,6,4,1),X(5,2,6,3),X(1,4,2,5)]");
  // State bits must be permuted the same way: rotating by 1 maps bit k of d2
  // to bit (k+1)%3 of d.
  for (uint32_t bits = 0; bits < 8; ++bits) {
    uint32_t rot = ((bits << 1) | (bits >> 2)) & 0b111;
    CHECK(resolve(d, rot).circles == resolve(d2, bits).circles);
  }
}

TEST_CASE("trefoil cube transitions") {
  Diagram d = parse_pd(kTrefoil);
  ResolutionState s000 = resolve(d, 0b000);
  EdgeTransition t = transition(d, s000, 2);
  CHECK(t.kind == TransitionKind::merge);  // 3 circles -> 2

  ResolutionState s110 = resolve(d, 0b110);
  EdgeTransition t2 = transition(d, s110, 0);
  CHECK(t2.kind == TransitionKind::split);  // 1 circle -> 2
  CHECK(t2.out_a != t2.out_b);

  CHECK_THROWS_AS(transition(d, resolve(d, 0b001), 0), validation_error);
}

TEST_CASE("every cube edge changes the circle count by exactly one") {
  for (const Diagram& d : oracle::random_knots(12, 8, 7)) {
    const int c = static_cast<int>(d.crossing_count());
    for (uint32_t bits = 0; bits < (uint32_t{1} << c); ++bits) {
      ResolutionState rs = resolve(d, bits);
      for (int k = 0; k < c; ++k) {
        if ((bits >> k) & 1) continue;
        EdgeTransition t = transition(d, rs, k);  // throws unless |delta| = 1
        ResolutionState target = resolve(d, bits | (uint32_t{1} << k));
        const int delta = target.circle_count() - rs.circle_count();
        CHECK(delta == (t.kind == TransitionKind::merge ? -1 : 1));
      }
    }
  }
}

TEST_CASE("gray enumeration covers all states") {
  auto states = gray_states(4);
  CHECK(states.size() == 16);
  std::vector<char> seen(16, 0);
  for (uint32_t s : states) seen[s] = 1;
  for (char x : seen) CHECK(x == 1);
  for (std::size_t i = 1; i < states.size(); ++i)
    CHECK(std::popcount(states[i] ^ states[i - 1]) == 1);
}
