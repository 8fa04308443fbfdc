#include "gptinfo/convex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gptinfo/error.hpp"

namespace gptinfo {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-10;
constexpr std::size_t kMaxIterations = 200000;

// How an original variable maps onto nonnegative standard-form columns.
struct VarMap {
  enum class Kind { Shifted, Reflected, Split } kind = Kind::Shifted;
  double offset = 0.0;
  std::size_t col = 0;
  std::size_t neg_col = 0;  // Split only
};

struct Row {
  std::vector<double> a;  // over standard-form columns
  Relation rel;
  double rhs;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_(rows * (cols + 1), 0.0), basis_(rows, 0), cost_(cols + 1, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  // Sets the reduced-cost row for maximizing c . y given the current basis.
  void set_objective(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= n_; ++j) cost_[j] = j < n_ ? c[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= cb * at(i, j);
    }
  }

  // Objective value is -cost_[n_] under the convention above.
  double objective_value() const { return -cost_[n_]; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    const double f = cost_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= f * at(r, j);
      cost_[c] = 0.0;
    }
    basis_[r] = c;
  }

  enum class Outcome { Optimal, Unbounded, IterationLimit };

  // Bland's rule: lowest-index improving column, lowest-index leaving variable
  // among ratio ties.
  Outcome run(const std::vector<bool>& allowed) {
    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (allowed[j] && cost_[j] > kCostEps) {
          enter = j;
          break;
        }
      }
      if (enter == n_) return Outcome::Optimal;
      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = std::max(0.0, at(i, n_)) / a;
        if (leave == m_ || ratio < best - 1e-12) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-12 && basis_[i] < basis_[leave]) {
          leave = i;
        }
      }
      if (leave == m_) return Outcome::Unbounded;
      pivot(leave, enter);
    }
    return Outcome::IterationLimit;
  }

  void drop_row(std::size_t r) {
    const std::size_t w = n_ + 1;
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * w),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
};

bool satisfies(const LinearProgram& lp, const std::vector<double>& x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& b = lp.bounds[j];
    if (x[j] < b.lower - kLpTol * std::max(1.0, std::abs(b.lower))) return false;
    if (x[j] > b.upper + kLpTol * std::max(1.0, std::abs(b.upper))) return false;
  }
  for (const auto& c : lp.constraints) {
    double lhs = 0.0, scale = std::abs(c.bound);
    for (std::size_t j = 0; j < x.size(); ++j) {
      lhs += c.coeffs[j] * x[j];
      scale = std::max(scale, std::abs(c.coeffs[j] * x[j]));
    }
    const double slack = kLpTol * std::max(1.0, scale);
    switch (c.relation) {
      case Relation::LessEq:
        if (lhs > c.bound + slack) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.bound - slack) return false;
        break;
      case Relation::Equal:
        if (std::abs(lhs - c.bound) > slack) return false;
        break;
    }
  }
  return true;
}

}  // namespace

const char* to_string(LpStatus s) noexcept {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

void LinearProgram::add(std::vector<double> coeffs, Relation rel, double bound) {
  if (coeffs.size() != num_vars())
    throw Error(ErrorCode::DimensionMismatch, "constraint has " + std::to_string(coeffs.size()) +
                                                  " coefficients, LP has " +
                                                  std::to_string(num_vars()) + " variables");
  constraints.push_back({std::move(coeffs), rel, bound});
}

LpResult lp_solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (lp.bounds.size() != n) throw Error(ErrorCode::DimensionMismatch, "bounds size");
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != n) throw Error(ErrorCode::DimensionMismatch, "constraint size");

  // Map variables onto nonnegative columns.
  std::vector<VarMap> vars(n);
  std::size_t ny = 0;
  std::vector<Row> rows;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = lp.bounds[j];
    if (b.lower > b.upper) return {LpStatus::Infeasible, {}, 0.0};
    if (std::isfinite(b.lower)) {
      vars[j] = {VarMap::Kind::Shifted, b.lower, ny++, 0};
    } else if (std::isfinite(b.upper)) {
      vars[j] = {VarMap::Kind::Reflected, b.upper, ny++, 0};
    } else {
      vars[j] = {VarMap::Kind::Split, 0.0, ny, ny + 1};
      ny += 2;
    }
  }
  auto transform = [&](const std::vector<double>& coeffs, double& constant) {
    std::vector<double> a(ny, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double cj = coeffs[j];
      if (cj == 0.0) continue;
      const auto& v = vars[j];
      switch (v.kind) {
        case VarMap::Kind::Shifted:
          a[v.col] += cj;
          constant += cj * v.offset;
          break;
        case VarMap::Kind::Reflected:
          a[v.col] -= cj;
          constant += cj * v.offset;
          break;
        case VarMap::Kind::Split:
          a[v.col] += cj;
          a[v.neg_col] -= cj;
          break;
      }
    }
    return a;
  };
  for (const auto& c : lp.constraints) {
    double constant = 0.0;
    auto a = transform(c.coeffs, constant);
    rows.push_back({std::move(a), c.relation, c.bound - constant});
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = lp.bounds[j];
    if (vars[j].kind == VarMap::Kind::Shifted && std::isfinite(b.upper)) {
      std::vector<double> a(ny, 0.0);
      a[vars[j].col] = 1.0;
      rows.push_back({std::move(a), Relation::LessEq, b.upper - b.lower});
    }
  }
  for (auto& r : rows) {
    if (r.rhs < 0.0) {
      for (double& x : r.a) x = -x;
      r.rhs = -r.rhs;
      if (r.rel == Relation::LessEq)
        r.rel = Relation::GreaterEq;
      else if (r.rel == Relation::GreaterEq)
        r.rel = Relation::LessEq;
    }
  }

  // Columns: structural, then one slack/surplus per inequality, then artificials.
  const std::size_t m = rows.size();
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::Equal) ++n_slack;
    if (r.rel != Relation::LessEq) ++n_art;
  }
  const std::size_t art_begin = ny + n_slack;
  const std::size_t total = art_begin + n_art;
  Tableau tab(m, total);
  {
    std::size_t s = ny, a = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& r = rows[i];
      for (std::size_t j = 0; j < ny; ++j) tab.at(i, j) = r.a[j];
      tab.rhs(i) = r.rhs;
      if (r.rel == Relation::LessEq) {
        tab.at(i, s) = 1.0;
        tab.basis()[i] = s++;
      } else {
        if (r.rel == Relation::GreaterEq) tab.at(i, s++) = -1.0;
        tab.at(i, a) = 1.0;
        tab.basis()[i] = a++;
      }
    }
  }

  std::vector<bool> allowed(total, true);
  if (n_art > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = art_begin; j < total; ++j) phase1[j] = -1.0;
    tab.set_objective(phase1);
    if (tab.run(allowed) != Tableau::Outcome::Optimal) return {LpStatus::NumericalFailure, {}, 0.0};
    if (-tab.objective_value() > kLpTol) return {LpStatus::Infeasible, {}, 0.0};
    // Drive zero-level artificials out of the basis; rows with no other
    // usable pivot are redundant.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < art_begin) {
        ++i;
        continue;
      }
      std::size_t col = art_begin;
      double best = 1e-9;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(tab.at(i, j)) > best) {
          best = std::abs(tab.at(i, j));
          col = j;
        }
      }
      if (col == art_begin) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = art_begin; j < total; ++j) allowed[j] = false;
  }

  std::vector<double> c(total, 0.0);
  {
    double constant = 0.0;
    auto obj = transform(lp.objective, constant);
    const double sign = lp.sense == Sense::Maximize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < ny; ++j) c[j] = sign * obj[j];
  }
  tab.set_objective(c);
  const auto outcome = tab.run(allowed);
  if (outcome == Tableau::Outcome::Unbounded) return {LpStatus::Unbounded, {}, 0.0};
  if (outcome != Tableau::Outcome::Optimal) return {LpStatus::NumericalFailure, {}, 0.0};

  std::vector<double> y(total, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i) y[tab.basis()[i]] = std::max(0.0, tab.rhs(i));
  std::vector<double> x(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = vars[j];
    switch (v.kind) {
      case VarMap::Kind::Shifted: x[j] = v.offset + y[v.col]; break;
      case VarMap::Kind::Reflected: x[j] = v.offset - y[v.col]; break;
      case VarMap::Kind::Split: x[j] = y[v.col] - y[v.neg_col]; break;
    }
  }
  if (!satisfies(lp, x)) return {LpStatus::NumericalFailure, {}, 0.0};
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * x[j];
  return {LpStatus::Optimal, std::move(x), value};
}

Polytope::Polytope(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorCode::DegenerateModel, "polytope needs a vertex");
  const std::size_t d = vertices_.front().size();
  for (const auto& v : vertices_) {
    if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "ragged vertex list");
    for (double x : v)
      if (!std::isfinite(x)) throw Error(ErrorCode::DegenerateModel, "non-finite vertex");
  }
}

LinearProgram decomposition_program(std::span<const Point> vertices, const Point& target) {
  const std::size_t nv = vertices.size();
  LinearProgram lp(nv);
  lp.add(std::vector<double>(nv, 1.0), Relation::Equal, 1.0);
  for (std::size_t k = 0; k < target.size(); ++k) {
    std::vector<double> row(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      if (vertices[i].size() != target.size())
        throw Error(ErrorCode::DimensionMismatch, "point and vertex dimensions differ");
      row[i] = vertices[i][k];
    }
    lp.add(std::move(row), Relation::Equal, target[k]);
  }
  return lp;
}

std::optional<std::vector<double>> convex_weights(const Point& point, const Polytope& poly) {
  if (point.size() != poly.dimension())
    throw Error(ErrorCode::DimensionMismatch, "point has dimension " +
                                                  std::to_string(point.size()) + ", polytope " +
                                                  std::to_string(poly.dimension()));
  const auto res = lp_solve(decomposition_program(poly.vertices(), point));
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return res.point;
}

bool membership(const Point& point, const Polytope& poly) {
  return convex_weights(point, poly).has_value();
}

double topk_weight_max(const LinearProgram& skeleton, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorCode::InvalidInput, "subset must be nonempty");
  LinearProgram lp = skeleton;
  lp.sense = Sense::Maximize;
  std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
  for (std::size_t i : subset) {
    if (i >= lp.num_vars()) throw Error(ErrorCode::InvalidInput, "subset index out of range");
    lp.objective[i] = 1.0;
  }
  const auto res = lp_solve(lp);
  if (res.status == LpStatus::Infeasible)
    throw Error(ErrorCode::InfeasibleDecomposition, "state is not in the convex hull");
  if (res.status != LpStatus::Optimal)
    throw Error(ErrorCode::InfeasibleDecomposition,
                std::string("decomposition LP ended with status ") + to_string(res.status));
  return res.value;
}

}  // namespace gptinfo
