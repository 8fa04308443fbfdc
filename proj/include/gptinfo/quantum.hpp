#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gptinfo/entropic.hpp"
#include "gptinfo/probvec.hpp"

namespace gptinfo {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxQuantumDim = 16;

/// Hermitian, positive semidefinite, unit-trace matrix of dimension <= 16.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix rho);

  /// |psi><psi| for a normalized (or normalizable) vector.
  static DensityMatrix pure(const CVector& psi);
  /// I / n.
  static DensityMatrix maximally_mixed(std::size_t n);
  static DensityMatrix diagonal(const std::vector<double>& eigenvalues);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  const CMatrix& matrix() const noexcept { return rho_; }

 private:
  CMatrix rho_;
};

/// Finite POVM: PSD effects summing to the identity.
class Povm {
 public:
  /// Validates positivity and completeness; if `rank_one` is set, also that
  /// every effect has numerical rank one.
  Povm(std::vector<CMatrix> effects, bool rank_one = false);

  /// Projective measurement onto the columns of a unitary.
  static Povm from_basis(const CMatrix& unitary);
  /// Rank-one POVM {V_i^dagger V_i} built from the rows of an isometry V
  /// (V^dagger V = I, M >= N rows).
  static Povm from_isometry(const CMatrix& isometry);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(effects_.front().rows()); }
  std::size_t size() const noexcept { return effects_.size(); }
  bool rank_one() const noexcept { return rank_one_; }
  const std::vector<CMatrix>& effects() const noexcept { return effects_; }

 private:
  std::vector<CMatrix> effects_;
  bool rank_one_;
};

/// Weighted family of states {p_x, rho_x} of a common dimension.
class Ensemble {
 public:
  Ensemble(ProbVector weights, std::vector<DensityMatrix> states);

  std::size_t size() const noexcept { return states_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  const ProbVector& weights() const noexcept { return weights_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }

  /// rho = sum_x p_x rho_x.
  DensityMatrix average() const;

 private:
  ProbVector weights_;
  std::vector<DensityMatrix> states_;
};

/// Born rule: component i is Tr(rho E_i).
ProbVector born_probabilities(const DensityMatrix& rho, const Povm& m);

/// Eigenvalues sorted decreasing, clamped at zero, renormalized.
ProbVector eigen_spectrum(const DensityMatrix& rho);

/// h(Tr phi(rho)), evaluated through the eigenvalues.
double quantum_entropy(const EntropicPair& pair, const DensityMatrix& rho);

struct MinSearchResult {
  double value;
  Povm witness;
};

/// Minimum of H(p(E; rho)) over rank-one POVMs, searched with random
/// isometries of N..2N outcomes and Givens-rotation refinement around the best
/// candidate. The eigenbasis PVM is always the first candidate. `budget`
/// counts POVM evaluations; the result is a pure function of (seed, budget).
MinSearchResult quantum_entropy_min_search(const EntropicPair& pair, const DensityMatrix& rho,
                                           std::size_t budget, std::uint64_t seed);

/// rho ≺ sigma, compared through eigenvalue spectra.
bool quantum_majorizes(const DensityMatrix& sigma, const DensityMatrix& rho);

/// S(rho) - sum_x p_x S(rho_x) with S the von Neumann entropy in nats.
double holevo_chi(const Ensemble& e);

/// I(X:Y) = H(X) + H(Y) - H(X,Y) in nats for a joint probability table.
double mutual_information(const Eigen::MatrixXd& joint);

/// Mutual information of the joint table p(x, i) = p_x Tr(rho_x E_i).
double accessible_info_estimate(const Ensemble& e, const Povm& m);

// Random fixtures.
CMatrix random_unitary(std::size_t n, std::mt19937_64& rng);
CMatrix random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
CVector random_pure_vector(std::size_t n, std::mt19937_64& rng);
/// Full-rank-generic mixed state from a Ginibre matrix G: G G^dagger / Tr.
DensityMatrix random_density_matrix(std::size_t n, std::mt19937_64& rng);

}  // namespace gptinfo
