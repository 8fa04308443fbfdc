#include "gptinfo/composites.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gptinfo/error.hpp"

namespace gptinfo {
namespace {

constexpr double kJointTol = 1e-8;

void require_normalized(const ProductSpace& ps, const JointState& omega) {
  if (omega.rows() != ps.a().dimension() || omega.cols() != ps.b().dimension())
    throw Error(ErrorCode::DimensionMismatch, "joint table is " + std::to_string(omega.rows()) +
                                                  "x" + std::to_string(omega.cols()));
  if (std::abs(omega.normalization() - 1.0) > kJointTol)
    throw Error(ErrorCode::NotNormalized,
                "omega(u_A, u_B) = " + std::to_string(omega.normalization()));
}

Eigen::MatrixXd span_basis(const StateSpace& s) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(s.dimension()), static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t k = 0; k < s.dimension(); ++k)
      a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = s.vertices()[i][k];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  svd.setThreshold(1e-10);
  return svd.matrixU().leftCols(svd.rank());
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

JointState::JointState(std::size_t rows, std::size_t cols, std::vector<double> tensor)
    : rows_(rows), cols_(cols), t_(std::move(tensor)) {
  if (rows_ == 0 || cols_ == 0 || t_.size() != rows_ * cols_)
    throw Error(ErrorCode::DimensionMismatch, "joint tensor size does not match its shape");
  for (double x : t_)
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, "non-finite joint tensor entry");
}

double JointState::operator()(const GptEffect& e, const GptEffect& f) const {
  const auto& a = e.coeffs();
  const auto& b = f.coeffs();
  if (a.size() != rows_ || b.size() != cols_)
    throw Error(ErrorCode::DimensionMismatch, "effect dimensions do not match the joint state");
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) row += at(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

JointState product_state(const GptState& a, const GptState& b) {
  const auto& x = a.coords();
  const auto& y = b.coords();
  std::vector<double> t;
  t.reserve(x.size() * y.size());
  for (double xi : x)
    for (double yj : y) t.push_back(xi * yj);
  return JointState(x.size(), y.size(), std::move(t));
}

JointState product_mixture(const ProductSpace& ps, const std::vector<ProductTerm>& terms) {
  const std::size_t da = ps.a().dimension(), db = ps.b().dimension();
  std::vector<double> t(da * db, 0.0);
  for (const auto& term : terms) {
    const auto& x = ps.a().vertices().at(term.vertex_a);
    const auto& y = ps.b().vertices().at(term.vertex_b);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j) t[i * db + j] += term.weight * x[i] * y[j];
  }
  return JointState(da, db, std::move(t));
}

Polytope min_tensor_vertices(const ProductSpace& ps) {
  if (ps.a().size() > 8 || ps.b().size() > 8)
    throw Error(ErrorCode::TooLarge, "min tensor product needs factors with at most 8 vertices");
  std::vector<Point> v;
  for (std::size_t i = 0; i < ps.a().size(); ++i)
    for (std::size_t j = 0; j < ps.b().size(); ++j)
      v.push_back(product_state(ps.a().vertex_state(i), ps.b().vertex_state(j)).tensor());
  return Polytope(std::move(v));
}

SeparabilityResult is_separable(const ProductSpace& ps, const JointState& omega) {
  require_normalized(ps, omega);
  const Polytope poly = min_tensor_vertices(ps);
  const auto w = convex_weights(omega.tensor(), poly);
  SeparabilityResult r;
  if (!w) return r;
  r.separable = true;
  const std::size_t nb = ps.b().size();
  for (std::size_t k = 0; k < w->size(); ++k)
    if ((*w)[k] > 1e-12) r.witness.push_back({(*w)[k], k / nb, k % nb});
  return r;
}

MaxTensorReport max_tensor_check(const ProductSpace& ps, const JointState& omega) {
  require_normalized(ps, omega);
  const auto ea = extreme_effects(ps.a());
  const auto eb = extreme_effects(ps.b());
  MaxTensorReport r;
  r.min_value = r.max_value = omega.normalization();
  double worst = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    for (std::size_t j = 0; j < eb.size(); ++j) {
      const double v = omega(ea[i], eb[j]);
      r.min_value = std::min(r.min_value, v);
      r.max_value = std::max(r.max_value, v);
      const double violation = std::max(-v, v - 1.0);
      if (violation > worst) {
        worst = violation;
        r.worst_a = i;
        r.worst_b = j;
      }
    }
  }
  r.member = worst <= kJointTol;
  return r;
}

bool max_tensor_member(const ProductSpace& ps, const JointState& omega) {
  return max_tensor_check(ps, omega).member;
}

const char* to_string(JointClass c) noexcept {
  switch (c) {
    case JointClass::Separable: return "separable";
    case JointClass::EntangledMaxConsistent: return "entangled";
    case JointClass::NotAState: return "not_a_state";
  }
  return "unknown";
}

JointClass classify(const ProductSpace& ps, const JointState& omega) {
  if (!max_tensor_member(ps, omega)) return JointClass::NotAState;
  return is_separable(ps, omega).separable ? JointClass::Separable
                                           : JointClass::EntangledMaxConsistent;
}

std::vector<JointState> max_tensor_extreme_points(const ProductSpace& ps) {
  const Eigen::MatrixXd ba = span_basis(ps.a());
  const Eigen::MatrixXd bb = span_basis(ps.b());
  const auto ra = static_cast<std::size_t>(ba.cols());
  const auto rb = static_cast<std::size_t>(bb.cols());
  const std::size_t dim = ra * rb;

  // omega = Ba S Bb^T; constraints are linear in vec(S).
  auto pair_row = [&](const GptEffect& e, const GptEffect& f) {
    const Eigen::VectorXd x = ba.transpose() * to_eigen(e.coeffs());
    const Eigen::VectorXd y = bb.transpose() * to_eigen(f.coeffs());
    std::vector<double> row(dim);
    for (std::size_t i = 0; i < ra; ++i)
      for (std::size_t j = 0; j < rb; ++j)
        row[i * rb + j] = x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j));
    return row;
  };
  std::vector<std::vector<double>> rows;
  for (const auto& e : extreme_effects(ps.a()))
    for (const auto& f : extreme_effects(ps.b())) {
      auto row = pair_row(e, f);
      double norm = 0.0;
      for (double x : row) norm += x * x;
      if (norm > 1e-20) rows.push_back(std::move(row));
    }
  const auto norm_row = pair_row(ps.a().unit(), ps.b().unit());

  // Drop constraints implied (conically) by the rest.
  for (std::size_t k = rows.size(); k-- > 0;) {
    if (rows.size() <= 1) break;
    LinearProgram lp(rows.size() - 1);
    for (std::size_t t = 0; t < dim; ++t) {
      std::vector<double> c;
      for (std::size_t o = 0; o < rows.size(); ++o)
        if (o != k) c.push_back(rows[o][t]);
      lp.add(std::move(c), Relation::Equal, rows[k][t]);
    }
    if (lp_solve(lp).status == LpStatus::Optimal) rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(k));
  }

  const std::size_t m = rows.size();
  const std::size_t active = dim - 1;
  if (active > m) return {};
  double combos = 1.0;
  for (std::size_t i = 0; i < active; ++i)
    combos *= static_cast<double>(m - i) / static_cast<double>(i + 1);
  if (combos > 5e6) throw Error(ErrorCode::TooLarge, "max tensor enumeration too large");

  std::vector<Eigen::VectorXd> found;
  std::vector<std::size_t> idx(active);
  for (std::size_t i = 0; i < active; ++i) idx[i] = i;
  do {
    Eigen::MatrixXd sys(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < active; ++i)
      sys.row(static_cast<Eigen::Index>(i)) = to_eigen(rows[idx[i]]).transpose();
    sys.row(static_cast<Eigen::Index>(active)) = to_eigen(norm_row).transpose();
    rhs(static_cast<Eigen::Index>(active)) = 1.0;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (static_cast<std::size_t>(lu.rank()) < dim) continue;
    const Eigen::VectorXd s = lu.solve(rhs);
    bool feasible = true;
    for (const auto& r : rows)
      if (to_eigen(r).dot(s) < -1e-9) {
        feasible = false;
        break;
      }
    if (!feasible) continue;
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Eigen::VectorXd& g) {
      return (g - s).cwiseAbs().maxCoeff() < 1e-9;
    });
    if (!dup) found.push_back(s);
  } while (next_combination(idx, m));

  std::vector<JointState> out;
  for (const auto& s : found) {
    const Eigen::MatrixXd sm =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            s.data(), static_cast<Eigen::Index>(ra), static_cast<Eigen::Index>(rb));
    const Eigen::MatrixXd t = ba * sm * bb.transpose();
    std::vector<double> flat;
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      for (Eigen::Index j = 0; j < t.cols(); ++j)
        flat.push_back(std::abs(t(i, j)) < 1e-13 ? 0.0 : t(i, j));
    out.emplace_back(static_cast<std::size_t>(t.rows()), static_cast<std::size_t>(t.cols()),
                     std::move(flat));
  }
  return out;
}

bool classical_collapse_check(const StateSpace& a, const StateSpace& b) {
  if (a.size() * b.size() > 16)
    throw Error(ErrorCode::TooLarge, "classical collapse check needs V_A * V_B <= 16");
  const ProductSpace ps(a, b);
  const Polytope products = min_tensor_vertices(ps);
  for (const auto& omega : max_tensor_extreme_points(ps)) {
    const bool is_product = std::any_of(
        products.vertices().begin(), products.vertices().end(), [&](const Point& v) {
          for (std::size_t k = 0; k < v.size(); ++k)
            if (std::abs(v[k] - omega.tensor()[k]) > 1e-7) return false;
          return true;
        });
    if (!is_product) return false;
  }
  return true;
}

JointState pr_box(const ProductSpace& ps) {
  for (const StateSpace* s : {&ps.a(), &ps.b()})
    if (s->kind() != ModelKind::RegularPolygon || s->n() != 4)
      throw Error(ErrorCode::InvalidInput, "the PR box is defined on two squares");
  // With s = x + y and t = x - y, the correlator matrix [[1, 1], [1, -1]] in
  // (s, t) pulls back to [[1/2, 1/2], [1/2, -1/2]] in (x, y).
  return JointState(3, 3, {0.5, 0.5, 0.0,  //
                           0.5, -0.5, 0.0,  //
                           0.0, 0.0, 1.0});
}

}  // namespace gptinfo
