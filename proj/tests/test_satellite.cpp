#include "doctest.h"
#include "khdet/gen.hpp"
#include "khdet/invariants.hpp"
#include "khdet/satellite.hpp"
#include "khdet/scan.hpp"
#include "oracles.hpp"

using namespace khdet;

namespace {
const char* kTrefoil = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";

Diagram kink_pos() {
  Diagram a = braid_closure({1}, 2);
  return writhe(a) == 1 ? a : braid_closure({-1}, 2);
}
}  // namespace

TEST_CASE("framing twists cancel the writhe") {
  Diagram t = parse_pd(kTrefoil);
  CHECK(framing_twists(t) == 3);
  CHECK(framing_twists(unknot()) == 0);
  CHECK(framing_twists(mirror(t)) == -3);
}

TEST_CASE("satellite crossing counts: 4c + 2|w| + |n|") {
  Diagram t = parse_pd(kTrefoil);
  CHECK(build_satellite(t, {2}).crossing_count() == 20);
  CHECK(build_satellite(t, {1}).crossing_count() == 19);
  CHECK(build_satellite(t, {0}).crossing_count() == 18);
  CHECK(build_satellite(rational_knot({2, 2}), {0}).crossing_count() == 16);
  CHECK(build_satellite(unknot(), {0}).is_unknot_diagram());
}

TEST_CASE("satellite output always validates") {
  // build_satellite emits through make_diagram, so reaching here means every
  // invariant (each edge twice, orientation, single component) held.
  std::vector<Diagram> companions = {unknot(), kink_pos(), mirror(kink_pos()),
                                     parse_pd(kTrefoil), rational_knot({2, 2})};
  for (const Diagram& companion : companions)
    for (int n = -2; n <= 2; ++n) {
      Diagram s = build_satellite(companion, {n});
      CHECK(s.component_count == 1);
      CHECK(s.crossing_count() == 4 * companion.crossing_count() +
                                      2 * std::abs(writhe(companion)) + std::abs(n));
    }
}

TEST_CASE("calibration: satellites of unknot diagrams are unknots") {
  // Kinked companions exercise the framing correction; any handedness error
  // turns the n=+-1 satellites into (2,k)-torus knots of rank > 1.
  for (const Diagram& companion : {unknot(), kink_pos(), mirror(kink_pos()),
                                   braid_closure({1, -1, 1}, 2)})
    for (int n = -2; n <= 2; ++n) {
      RankTable t = homology_fast(build_satellite(companion, {n}), true);
      CHECK(t.total == 1);
    }
}

TEST_CASE("n=0 satellites of nontrivial companions are unknots") {
  for (const Diagram& companion : {parse_pd(kTrefoil), rational_knot({2, 2})}) {
    RankTable t = homology_fast(build_satellite(companion, {0}), true);
    CHECK(t.total == 1);
  }
}

TEST_CASE("trefoil satellites meet the 4n+1 bound; values pinned") {
  Diagram t = parse_pd(kTrefoil);
  RankTable s1 = homology_fast(build_satellite(t, {1}), true);
  SatelliteBoundReport r1 = check_satellite_bound(s1, 1, true);
  CHECK(r1.applicable);
  CHECK(r1.holds);
  CHECK(r1.bound == 5);
  CHECK(s1.total == 25);

  RankTable s2 = homology_fast(build_satellite(t, {2}), true);
  SatelliteBoundReport r2 = check_satellite_bound(s2, 2, true);
  CHECK(r2.holds);
  CHECK(r2.bound == 9);
  CHECK(s2.total == 49);
}

TEST_CASE("framing independence: same companion, different writhes") {
  // Standard trefoil (writhe -3) vs a stabilized diagram (writhe -4).
  Diagram a = braid_closure({1, 1, 1}, 2);
  Diagram b = braid_closure({1, 1, 1, 2}, 3);
  CHECK(homology_fast(build_satellite(a, {1}), true) ==
        homology_fast(build_satellite(b, {1}), true));
}

TEST_CASE("satellite jones agrees with the bracket oracle at 19 crossings") {
  Diagram s = build_satellite(parse_pd(kTrefoil), {1});
  CHECK(jones(homology_fast(s, true)) == oracle::kauffman_jones(s));
}
