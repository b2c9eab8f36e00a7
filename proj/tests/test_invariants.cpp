#include "doctest.h"
#include "khdet/gen.hpp"
#include "khdet/invariants.hpp"
#include "oracles.hpp"

using namespace khdet;

namespace {
const char* kTrefoil = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
}

TEST_CASE("jones of the unknot and the left trefoil") {
  CHECK(to_string(jones(homology_naive(unknot(), true))) == "1*q^0");
  LaurentPoly vt = jones(homology_naive(parse_pd(kTrefoil), true));
  LaurentPoly expect;
  expect.add(-2, 1);
  expect.add(-6, 1);
  expect.add(-8, -1);
  CHECK(vt == expect);
}

TEST_CASE("jones: chain-level Euler characteristic equals the homological one") {
  for (const Diagram& d : oracle::random_knots(10, 7, 17)) {
    GradedComplex c = build_complex(d, true);
    CHECK(jones(c) == jones(homology(c)));
  }
}

TEST_CASE("jones equals the Kauffman bracket state sum") {
  std::vector<Diagram> fixtures = {unknot(),          parse_pd(kTrefoil),
                                   rational_knot({2, 2}), rational_knot({3, 2}),
                                   braid_closure({1}, 2), braid_closure({1, 2, 1, 2, 1, 2, 1, 2}, 3)};
  for (const Diagram& d : fixtures) CHECK(jones(homology_naive(d, true)) == oracle::kauffman_jones(d));
  for (const Diagram& d : oracle::random_knots(15, 7, 77))
    CHECK(jones(homology_naive(d, true)) == oracle::kauffman_jones(d));
}

TEST_CASE("mirror duality of jones: q -> 1/q") {
  for (const Diagram& d : {parse_pd(kTrefoil), rational_knot({3, 1, 2})}) {
    LaurentPoly v = jones(homology_naive(d, true));
    LaurentPoly vm = jones(homology_naive(mirror(d), true));
    LaurentPoly flipped;
    for (const auto& [e, c] : v.coeffs) flipped.add(-e, c);
    CHECK(vm == flipped);
  }
}

TEST_CASE("jones at q = 1 is 1 for knots") {
  for (const Diagram& d : oracle::random_knots(10, 7, 23))
    CHECK(jones(homology_naive(d, true)).eval_int(1) == 1);
}

TEST_CASE("determinant values and parity") {
  CHECK(determinant(homology_naive(unknot(), true)) == 1);
  CHECK(determinant(homology_naive(parse_pd(kTrefoil), true)) == 3);
  CHECK(determinant(homology_naive(rational_knot({2, 2}), true)) == 5);
  for (const Diagram& d : oracle::random_knots(12, 7, 5)) {
    const long long det = determinant(homology_naive(d, true));
    CHECK(det % 2 == 1);  // knots have odd determinant
    CHECK(det == oracle::goeritz_determinant(d));
  }
}

TEST_CASE("detection inequality det <= rank") {
  InequalityReport r = check_detection_inequality(homology_naive(unknot(), true));
  CHECK(r.holds);
  CHECK(r.det == 1);
  CHECK(r.rank == 1);
  CHECK(r.slack == 0);
  for (const Diagram& d : oracle::random_knots(12, 7, 6))
    CHECK(check_detection_inequality(homology_naive(d, true)).holds);
}

TEST_CASE("certificates follow the rank-1 dichotomy") {
  RankTable one = homology_naive(unknot(), true);
  CHECK(certify(one, "U", true).verdict == Verdict::Unknot);
  CHECK(certify(one, "U", false).verdict == Verdict::Inconclusive);
  RankTable tre = homology_naive(parse_pd(kTrefoil), true);
  CHECK(certify(tre, "3_1", false).verdict == Verdict::Knotted);
  CHECK(certify(tre, "3_1", true).verdict == Verdict::Knotted);
  CHECK(to_json(certify(one, "U", true)) ==
        "{\"knot_name\": \"U\", \"total_rank\": 1, \"asserted_class\": true, "
        "\"verdict\": \"Unknot\"}");
}

TEST_CASE("satellite bound report") {
  RankTable t = homology_naive(parse_pd(kTrefoil), true);  // rank 3 stand-in table
  SatelliteBoundReport r0 = check_satellite_bound(t, 0, true);
  CHECK_FALSE(r0.applicable);
  SatelliteBoundReport r1 = check_satellite_bound(t, 1, false);
  CHECK_FALSE(r1.applicable);
  SatelliteBoundReport r2 = check_satellite_bound(t, 1, true);
  CHECK(r2.applicable);
  CHECK(r2.bound == 5);
  CHECK_FALSE(r2.holds);  // rank 3 < 5: the stand-in is not a satellite table
}
