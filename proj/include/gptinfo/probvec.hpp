#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gptinfo {

// Absolute tolerance for probability sums and partial-sum comparisons.
inline constexpr double kProbTol = 1e-9;

/// A finite probability distribution. Components are clamped to be
/// nonnegative and sum to one within kProbTol.
class ProbVector {
 public:
  /// Validates an already-normalized vector. Components in [-tol, 0) are
  /// clamped to zero; throws NegativeWeight or NotNormalized otherwise.
  explicit ProbVector(std::vector<double> components);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> components() const noexcept { return p_; }
  const std::vector<double>& values() const noexcept { return p_; }

  auto begin() const noexcept { return p_.begin(); }
  auto end() const noexcept { return p_.end(); }

  friend bool operator==(const ProbVector&, const ProbVector&) = default;

 private:
  struct Trusted {};
  ProbVector(std::vector<double> components, Trusted) : p_(std::move(components)) {}

  std::vector<double> p_;

  friend ProbVector normalize(std::span<const double> weights);
  friend ProbVector sort_desc(const ProbVector& p);
};

/// Rescales nonnegative weights to sum to exactly one.
ProbVector normalize(std::span<const double> weights);

/// Stable descending sort.
ProbVector sort_desc(const ProbVector& p);

/// Sorted partial sums s_n = p_1 + ... + p_n of the decreasing
/// rearrangement, zero-padded to `length` if given.
std::vector<double> partial_sums(const ProbVector& p, std::size_t length = 0);

/// True iff p is majorized by q (p ≺ q). The shorter vector is zero-padded.
bool majorizes(const ProbVector& q, const ProbVector& p, double tol = kProbTol);

/// Uniform distribution of length n.
ProbVector uniform(std::size_t n);

/// Point mass (1, 0, ..., 0) of length n.
ProbVector point_mass(std::size_t n);

}  // namespace gptinfo
