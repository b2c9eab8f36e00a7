#pragma once

#include <map>
#include <string>

#include "khdet/complex.hpp"

namespace khdet {

// Integer Laurent polynomial in one variable q. No zero coefficients stored;
// an empty map is the zero polynomial.
struct LaurentPoly {
  std::map<int, long long> coeffs;

  void add(int exp, long long c) {
    auto it = coeffs.find(exp);
    if (it == coeffs.end()) {
      if (c != 0) coeffs[exp] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
  long long at(int exp) const {
    auto it = coeffs.find(exp);
    return it == coeffs.end() ? 0 : it->second;
  }
  long long eval_int(long long q) const;  // exact evaluation at an integer q
  bool operator==(const LaurentPoly&) const = default;
};

std::string to_string(const LaurentPoly& p);  // sorted coef*q^exp terms

// Graded Euler characteristic of a reduced table: sum (-1)^i q^j dim.
LaurentPoly jones(const RankTable& t);
// Same sum over the chain groups; equal by field independence.
LaurentPoly jones(const GradedComplex& c);

// |sum (-1)^(i + j/2) dim| = |J(q^2 = -1)|. Requires every j even.
long long determinant(const RankTable& t);

struct InequalityReport {
  long long det = 0;
  long long rank = 0;
  long long slack = 0;
  bool holds = false;
};
// det(K) <= rk of the reduced table; a violation means an engine bug.
InequalityReport check_detection_inequality(const RankTable& t);

enum class Verdict { Unknot, Knotted, Inconclusive };

struct Certificate {
  std::string knot_name;
  long long total_rank = 0;
  bool asserted_class = false;  // tangle unknotting number one, asserted by the caller
  Verdict verdict = Verdict::Inconclusive;
};

// Rank 1 plus the asserted class certifies the unknot; rank > 1 certifies
// knottedness unconditionally; rank 1 without the assertion is inconclusive.
Certificate certify(const RankTable& t, const std::string& name, bool asserted_class);

std::string to_json(const Certificate& c);
std::string to_string(Verdict v);

struct SatelliteBoundReport {
  bool applicable = false;  // n >= 1 and companion asserted nontrivial
  long long bound = 0;      // 4n + 1
  long long rank = 0;
  long long slack = 0;
  bool holds = true;
};
SatelliteBoundReport check_satellite_bound(const RankTable& t, int n, bool companion_nontrivial);

std::string to_json(const InequalityReport& r);
std::string to_json(const SatelliteBoundReport& r);

}  // namespace khdet
