#include "gptinfo/probvec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gptinfo/error.hpp"

namespace gptinfo {

ProbVector::ProbVector(std::vector<double> components) : p_(std::move(components)) {
  if (p_.empty()) throw Error(ErrorCode::InvalidInput, "probability vector must be nonempty");
  double total = 0.0;
  for (double& x : p_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, "non-finite probability");
    if (x < -kProbTol) throw Error(ErrorCode::NegativeWeight, "component " + std::to_string(x));
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (std::abs(total - 1.0) > kProbTol)
    throw Error(ErrorCode::NotNormalized, "components sum to " + std::to_string(total));
}

ProbVector normalize(std::span<const double> weights) {
  if (weights.empty()) throw Error(ErrorCode::AllZero, "no weights");
  std::vector<double> w(weights.begin(), weights.end());
  double total = 0.0;
  bool any_positive = false;
  for (double& x : w) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, "non-finite weight");
    if (x < -kProbTol) throw Error(ErrorCode::NegativeWeight, "weight " + std::to_string(x));
    if (x < 0.0) x = 0.0;
    if (x > kProbTol) any_positive = true;
    total += x;
  }
  if (!any_positive) throw Error(ErrorCode::AllZero, "every weight is below tolerance");
  for (double& x : w) x /= total;
  return ProbVector(std::move(w), ProbVector::Trusted{});
}

ProbVector sort_desc(const ProbVector& p) {
  std::vector<double> s = p.p_;
  std::stable_sort(s.begin(), s.end(), std::greater<>());
  return ProbVector(std::move(s), ProbVector::Trusted{});
}

std::vector<double> partial_sums(const ProbVector& p, std::size_t length) {
  std::vector<double> s(p.begin(), p.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  if (length > s.size()) s.resize(length, 0.0);
  std::partial_sum(s.begin(), s.end(), s.begin());
  return s;
}

bool majorizes(const ProbVector& q, const ProbVector& p, double tol) {
  const std::size_t n = std::max(p.size(), q.size());
  const auto sp = partial_sums(p, n);
  const auto sq = partial_sums(q, n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (sp[i] > sq[i] + tol) return false;
  return std::abs(sp[n - 1] - sq[n - 1]) <= tol;
}

ProbVector uniform(std::size_t n) {
  std::vector<double> w(n, 1.0);
  return normalize(w);
}

ProbVector point_mass(std::size_t n) {
  std::vector<double> w(n, 0.0);
  if (n > 0) w[0] = 1.0;
  return normalize(w);
}

}  // namespace gptinfo
