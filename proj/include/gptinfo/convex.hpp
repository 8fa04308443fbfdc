#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace gptinfo {

using Point = std::vector<double>;

// Constraint feasibility and reported-value tolerance of the LP solver.
inline constexpr double kLpTol = 1e-8;

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Maximize, Minimize };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation = Relation::LessEq;
  double bound = 0.0;
};

struct VariableBounds {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();

  static VariableBounds free() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
};

/// Dense LP: optimize objective . x subject to constraints and per-variable
/// bounds (default x >= 0).
struct LinearProgram {
  explicit LinearProgram(std::size_t num_vars)
      : objective(num_vars, 0.0), bounds(num_vars) {}

  std::size_t num_vars() const noexcept { return objective.size(); }
  void add(std::vector<double> coeffs, Relation rel, double bound);

  Sense sense = Sense::Maximize;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<VariableBounds> bounds;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(LpStatus s) noexcept;

struct LpResult {
  LpStatus status = LpStatus::NumericalFailure;
  std::vector<double> point;  // empty unless Optimal
  double value = 0.0;
};

/// Two-phase dense simplex with Bland's anti-cycling rule. A solution that
/// fails the post-solve constraint check is reported as NumericalFailure.
LpResult lp_solve(const LinearProgram& lp);

/// Finite vertex list; the polytope is its convex hull.
class Polytope {
 public:
  explicit Polytope(std::vector<Point> vertices);

  std::size_t dimension() const noexcept { return vertices_.front().size(); }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }

 private:
  std::vector<Point> vertices_;
};

/// LP skeleton for convex weights over `vertices` reproducing `target`:
/// p >= 0, sum p = 1, sum_i p_i v_i = target. The objective is left zero.
LinearProgram decomposition_program(std::span<const Point> vertices, const Point& target);

/// Convex weights over the vertices reproducing `point`, if any exist.
std::optional<std::vector<double>> convex_weights(const Point& point, const Polytope& poly);

/// True iff `point` lies in the convex hull of the vertices.
bool membership(const Point& point, const Polytope& poly);

/// Maximum of sum_{i in subset} p_i over the feasible set of `skeleton`
/// (typically a decomposition_program). Throws InfeasibleDecomposition when
/// that set is empty.
double topk_weight_max(const LinearProgram& skeleton, std::span<const std::size_t> subset);

}  // namespace gptinfo
