#include "gptinfo/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gptinfo/error.hpp"

namespace gptinfo {
namespace {

constexpr double kMatrixTol = 1e-9;
constexpr double kCompletenessTol = 1e-8;

using Complex = std::complex<double>;

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a nonempty square matrix");
  if (!m.allFinite()) throw Error(ErrorCode::InvalidInput, std::string(what) + " has non-finite entries");
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double shannon_of(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

CMatrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
  require_square(rho_, "density matrix");
  if (dim() > kMaxQuantumDim)
    throw Error(ErrorCode::TooLarge, "dimension " + std::to_string(dim()) + " exceeds 16");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kMatrixTol)
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  const double trace = rho_.trace().real();
  if (std::abs(trace - 1.0) > kMatrixTol)
    throw Error(ErrorCode::InvalidState, "trace is " + std::to_string(trace));
  if (hermitian_eigenvalues(rho_).minCoeff() < -kMatrixTol)
    throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
  rho_ = (0.5 * (rho_ + rho_.adjoint())).eval();
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::InvalidState, "zero state vector");
  const CVector v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  return DensityMatrix(CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) /
                       static_cast<double>(n));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& eigenvalues) {
  CMatrix d = CMatrix::Zero(static_cast<Eigen::Index>(eigenvalues.size()),
                            static_cast<Eigen::Index>(eigenvalues.size()));
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = eigenvalues[i];
  return DensityMatrix(std::move(d));
}

Povm::Povm(std::vector<CMatrix> effects, bool rank_one)
    : effects_(std::move(effects)), rank_one_(rank_one) {
  if (effects_.empty()) throw Error(ErrorCode::InvalidMeasurement, "POVM needs an effect");
  const auto n = effects_.front().rows();
  CMatrix total = CMatrix::Zero(n, n);
  for (auto& e : effects_) {
    require_square(e, "effect");
    if (e.rows() != n) throw Error(ErrorCode::DimensionMismatch, "effects differ in dimension");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kMatrixTol)
      throw Error(ErrorCode::InvalidMeasurement, "effect is not Hermitian");
    e = (0.5 * (e + e.adjoint())).eval();
    const Eigen::VectorXd ev = hermitian_eigenvalues(e);
    if (ev.minCoeff() < -kMatrixTol)
      throw Error(ErrorCode::InvalidMeasurement, "effect is not positive semidefinite");
    if (rank_one_ && n > 1 && ev(n - 2) > kCompletenessTol * std::max(1.0, ev(n - 1)))
      throw Error(ErrorCode::InvalidMeasurement, "effect is not rank one");
    total += e;
  }
  if ((total - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kCompletenessTol)
    throw Error(ErrorCode::InvalidMeasurement, "effects do not sum to the identity");
}

Povm Povm::from_basis(const CMatrix& unitary) {
  std::vector<CMatrix> effects;
  for (Eigen::Index j = 0; j < unitary.cols(); ++j) {
    const CVector v = unitary.col(j);
    effects.emplace_back(v * v.adjoint());
  }
  return Povm(std::move(effects), true);
}

Povm Povm::from_isometry(const CMatrix& isometry) {
  std::vector<CMatrix> effects;
  for (Eigen::Index i = 0; i < isometry.rows(); ++i) {
    const CVector v = isometry.row(i).adjoint();
    effects.emplace_back(v * v.adjoint());
  }
  return Povm(std::move(effects), true);
}

Ensemble::Ensemble(ProbVector weights, std::vector<DensityMatrix> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (states_.empty()) throw Error(ErrorCode::InvalidInput, "ensemble needs a state");
  if (states_.size() != weights_.size())
    throw Error(ErrorCode::DimensionMismatch, "ensemble has " + std::to_string(weights_.size()) +
                                                  " weights and " + std::to_string(states_.size()) +
                                                  " states");
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim())
      throw Error(ErrorCode::DimensionMismatch, "ensemble states differ in dimension");
}

DensityMatrix Ensemble::average() const {
  const auto n = static_cast<Eigen::Index>(dim());
  CMatrix rho = CMatrix::Zero(n, n);
  for (std::size_t x = 0; x < size(); ++x) rho += weights_[x] * states_[x].matrix();
  return DensityMatrix(std::move(rho));
}

ProbVector born_probabilities(const DensityMatrix& rho, const Povm& m) {
  if (rho.dim() != m.dim())
    throw Error(ErrorCode::DimensionMismatch, "state dimension " + std::to_string(rho.dim()) +
                                                  " vs POVM dimension " + std::to_string(m.dim()));
  std::vector<double> p;
  p.reserve(m.size());
  double total = 0.0;
  for (const auto& e : m.effects()) {
    const double v = (rho.matrix() * e).trace().real();
    p.push_back(v);
    total += v;
  }
  if (std::abs(total - 1.0) > kCompletenessTol)
    throw Error(ErrorCode::NotNormalized, "Born probabilities sum to " + std::to_string(total));
  for (double& v : p)
    if (v < 0.0 && v > -kCompletenessTol) v = 0.0;
  return normalize(p);
}

ProbVector eigen_spectrum(const DensityMatrix& rho) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho.matrix());
  std::vector<double> p(ev.data(), ev.data() + ev.size());
  std::reverse(p.begin(), p.end());
  for (double& x : p) x = std::max(0.0, x);
  return normalize(p);
}

double quantum_entropy(const EntropicPair& pair, const DensityMatrix& rho) {
  return classical_entropy(pair, eigen_spectrum(rho));
}

MinSearchResult quantum_entropy_min_search(const EntropicPair& pair, const DensityMatrix& rho,
                                           std::size_t budget, std::uint64_t seed) {
  if (budget == 0) throw Error(ErrorCode::InvalidInput, "budget must be >= 1");
  const std::size_t n = rho.dim();
  std::mt19937_64 rng(seed);

  auto evaluate = [&](const CMatrix& v) {
    // Isometry rows give the effects directly; avoids building each matrix.
    std::vector<double> p(static_cast<std::size_t>(v.rows()));
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const CVector row = v.row(i).adjoint();
      p[static_cast<std::size_t>(i)] = std::max(0.0, (row.adjoint() * rho.matrix() * row)(0, 0).real());
    }
    return classical_entropy(pair, normalize(p));
  };

  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  // Eigenbasis PVM: rows of the isometry are the conjugated eigenvectors.
  CMatrix best = es.eigenvectors().adjoint();
  double best_value = evaluate(best);

  const std::size_t n_random = (budget - 1) / 2;
  const std::size_t n_refine = budget - 1 - n_random;
  const std::size_t min_outcomes = std::max<std::size_t>(2, n);
  std::uniform_int_distribution<std::size_t> outcomes(min_outcomes, 2 * n);
  for (std::size_t s = 0; s < n_random; ++s) {
    CMatrix v = random_isometry(outcomes(rng), n, rng);
    const double value = evaluate(v);
    if (value < best_value) {
      best_value = value;
      best = std::move(v);
    }
  }

  // Givens rotations mixing two outcome rows keep V^dagger V = I.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double step = 0.5;
  for (std::size_t s = 0; s < n_refine; ++s) {
    const auto rows = static_cast<std::size_t>(best.rows());
    if (rows < 2) break;
    std::uniform_int_distribution<std::size_t> pick(0, rows - 1);
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (b == a) b = (a + 1) % rows;
    const double theta = step * (2.0 * unit(rng) - 1.0);
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    const double c = std::cos(theta), sn = std::sin(theta);
    const Complex e = std::polar(1.0, phase);
    CMatrix v = best;
    const auto ai = static_cast<Eigen::Index>(a), bi = static_cast<Eigen::Index>(b);
    v.row(ai) = c * best.row(ai) - sn * e * best.row(bi);
    v.row(bi) = sn * std::conj(e) * best.row(ai) + c * best.row(bi);
    const double value = evaluate(v);
    if (value < best_value) {
      best_value = value;
      best = std::move(v);
    } else {
      step = std::max(1e-6, step * 0.95);
    }
  }
  return {best_value, Povm::from_isometry(best)};
}

bool quantum_majorizes(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim())
    throw Error(ErrorCode::DimensionMismatch, "states differ in dimension");
  return majorizes(eigen_spectrum(sigma), eigen_spectrum(rho));
}

double holevo_chi(const Ensemble& e) {
  const auto shannon = EntropicPair::shannon();
  double chi = quantum_entropy(shannon, e.average());
  for (std::size_t x = 0; x < e.size(); ++x)
    chi -= e.weights()[x] * quantum_entropy(shannon, e.states()[x]);
  return chi + 0.0;
}

double mutual_information(const Eigen::MatrixXd& joint) {
  if (joint.size() == 0) throw Error(ErrorCode::InvalidInput, "empty joint table");
  if (!joint.allFinite()) throw Error(ErrorCode::InvalidInput, "non-finite joint table");
  if (joint.minCoeff() < -kProbTol) throw Error(ErrorCode::NotNormalized, "negative joint entry");
  const Eigen::MatrixXd p = joint.cwiseMax(0.0);
  if (std::abs(p.sum() - 1.0) > kProbTol)
    throw Error(ErrorCode::NotNormalized, "joint table sums to " + std::to_string(p.sum()));
  const Eigen::VectorXd px = p.rowwise().sum();
  const Eigen::VectorXd py = p.colwise().sum().transpose();
  std::vector<double> all(p.data(), p.data() + p.size());
  const double hx = shannon_of({px.data(), px.data() + px.size()});
  const double hy = shannon_of({py.data(), py.data() + py.size()});
  return hx + hy - shannon_of(all) + 0.0;
}

double accessible_info_estimate(const Ensemble& e, const Povm& m) {
  if (e.dim() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "ensemble and POVM dimensions differ");
  Eigen::MatrixXd joint(static_cast<Eigen::Index>(e.size()), static_cast<Eigen::Index>(m.size()));
  for (std::size_t x = 0; x < e.size(); ++x) {
    const auto p = born_probabilities(e.states()[x], m);
    for (std::size_t i = 0; i < m.size(); ++i)
      joint(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(i)) = e.weights()[x] * p[i];
  }
  return mutual_information(joint);
}

CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  return random_isometry(n, n, rng);
}

CMatrix random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  if (rows < cols) throw Error(ErrorCode::InvalidInput, "isometry needs rows >= cols");
  const CMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(static_cast<Eigen::Index>(rows),
                                                    static_cast<Eigen::Index>(cols));
  // Fix the column phases with R's diagonal so the distribution is Haar.
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

CVector random_pure_vector(std::size_t n, std::mt19937_64& rng) {
  CVector v = ginibre(n, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_density_matrix(std::size_t n, std::mt19937_64& rng) {
  const CMatrix g = ginibre(n, n, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix((0.5 * (rho + rho.adjoint())).eval());
}

}  // namespace gptinfo
