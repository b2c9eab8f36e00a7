#include "khdet/invariants.hpp"

#include <cmath>
#include <cstdlib>

namespace khdet {

long long LaurentPoly::eval_int(long long q) const {
  long long sum = 0;
  for (const auto& [exp, c] : coeffs) {
    long long pow = 1;
    for (int k = 0; k < std::abs(exp); ++k) pow *= q;
    if (exp < 0) {
      if (pow != 1 && pow != -1)
        throw std::invalid_argument("negative exponent needs q = +-1");
      // q^-1 = q for q = +-1
    }
    sum += c * pow;
  }
  return sum;
}

std::string to_string(const LaurentPoly& p) {
  if (p.coeffs.empty()) return "0";
  std::string out;
  for (const auto& [exp, c] : p.coeffs) {
    if (!out.empty()) out += " + ";
    out += std::to_string(c) + "*q^" + std::to_string(exp);
  }
  return out;
}

LaurentPoly jones(const RankTable& t) {
  if (!t.reduced) throw std::invalid_argument("jones needs a reduced table");
  LaurentPoly p;
  for (const auto& [ij, dim] : t.entries) p.add(ij.j, (ij.i % 2 == 0 ? 1 : -1) * dim);
  return p;
}

LaurentPoly jones(const GradedComplex& c) {
  if (!c.reduced) throw std::invalid_argument("jones needs a reduced complex");
  LaurentPoly p;
  for (const auto& [ij, block] : c.blocks)
    p.add(ij.j, (ij.i % 2 == 0 ? 1 : -1) * static_cast<long long>(block.gens.size()));
  return p;
}

long long determinant(const RankTable& t) {
  if (!t.reduced) throw std::invalid_argument("determinant needs a reduced table");
  long long sum = 0;
  for (const auto& [ij, dim] : t.entries) {
    if (ij.j % 2 != 0)
      throw std::invalid_argument("determinant: odd quantum grading violates the convention");
    const int par = (ij.i + ij.j / 2) % 2;
    sum += (par == 0 ? 1 : -1) * dim;
  }
  return std::llabs(sum);
}

InequalityReport check_detection_inequality(const RankTable& t) {
  InequalityReport r;
  r.det = determinant(t);
  r.rank = t.total;
  r.slack = r.rank - r.det;
  r.holds = r.slack >= 0;
  return r;
}

Certificate certify(const RankTable& t, const std::string& name, bool asserted_class) {
  Certificate c;
  c.knot_name = name;
  c.total_rank = t.total;
  c.asserted_class = asserted_class;
  if (t.total > 1)
    c.verdict = Verdict::Knotted;
  else if (asserted_class)
    c.verdict = Verdict::Unknot;
  else
    c.verdict = Verdict::Inconclusive;
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Unknot: return "Unknot";
    case Verdict::Knotted: return "Knotted";
    default: return "Inconclusive";
  }
}

std::string to_json(const Certificate& c) {
  std::string out = "{\"knot_name\": \"" + c.knot_name + "\"";
  out += ", \"total_rank\": " + std::to_string(c.total_rank);
  out += ", \"asserted_class\": " + std::string(c.asserted_class ? "true" : "false");
  out += ", \"verdict\": \"" + to_string(c.verdict) + "\"}";
  return out;
}

SatelliteBoundReport check_satellite_bound(const RankTable& t, int n, bool companion_nontrivial) {
  SatelliteBoundReport r;
  r.rank = t.total;
  if (n < 1 || !companion_nontrivial) return r;  // bound not applicable
  r.applicable = true;
  r.bound = 4LL * n + 1;
  r.slack = r.rank - r.bound;
  r.holds = r.slack >= 0;
  return r;
}

std::string to_json(const InequalityReport& r) {
  return "{\"det\": " + std::to_string(r.det) + ", \"rank\": " + std::to_string(r.rank) +
         ", \"slack\": " + std::to_string(r.slack) +
         ", \"holds\": " + (r.holds ? "true" : "false") + "}";
}

std::string to_json(const SatelliteBoundReport& r) {
  return "{\"applicable\": " + std::string(r.applicable ? "true" : "false") +
         ", \"bound\": " + std::to_string(r.bound) + ", \"rank\": " + std::to_string(r.rank) +
         ", \"slack\": " + std::to_string(r.slack) +
         ", \"holds\": " + (r.holds ? "true" : "false") + "}";
}

}  // namespace khdet
