#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gptinfo/convex.hpp"
#include "gptinfo/gpt_model.hpp"

namespace gptinfo {

/// Bipartite system. Joint states live in the tensor product of the two
/// ambient spaces, stored row-major as a dim_a x dim_b coefficient table.
class ProductSpace {
 public:
  ProductSpace(StateSpace a, StateSpace b) : a_(std::move(a)), b_(std::move(b)) {}

  const StateSpace& a() const noexcept { return a_; }
  const StateSpace& b() const noexcept { return b_; }
  std::size_t dimension() const noexcept { return a_.dimension() * b_.dimension(); }

 private:
  StateSpace a_, b_;
};

/// Bilinear functional on effect pairs: omega(E, F) = E^T T F.
class JointState {
 public:
  JointState(std::size_t rows, std::size_t cols, std::vector<double> tensor);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<double>& tensor() const noexcept { return t_; }
  double at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }

  double operator()(const GptEffect& e, const GptEffect& f) const;
  /// omega(u_A, u_B).
  double normalization() const { return at(rows_ - 1, cols_ - 1); }

 private:
  std::size_t rows_, cols_;
  std::vector<double> t_;
};

JointState product_state(const GptState& a, const GptState& b);

/// Mixture of product vertices: sum_k weights[k] * (vertex a_k ⊗ vertex b_k).
struct ProductTerm {
  double weight;
  std::size_t vertex_a;
  std::size_t vertex_b;
};

JointState product_mixture(const ProductSpace& ps, const std::vector<ProductTerm>& terms);

/// The V_A * V_B product vertices, ordered (a0 b0), (a0 b1), ...; factors
/// above 8 vertices throw TooLarge.
Polytope min_tensor_vertices(const ProductSpace& ps);

struct SeparabilityResult {
  bool separable = false;
  std::vector<ProductTerm> witness;  // nonzero weights only
};

/// Membership in the convex hull of product states, with a witnessing
/// decomposition. Throws NotNormalized unless omega(u_A, u_B) = 1.
SeparabilityResult is_separable(const ProductSpace& ps, const JointState& omega);

struct MaxTensorReport {
  bool member = false;
  double min_value = 0.0;  // smallest omega(E, F) over generator pairs
  double max_value = 0.0;  // largest
  std::size_t worst_a = 0, worst_b = 0;  // generator indices of the worst pair
};

/// omega(E, F) in [0, 1] (within tolerance) for every pair of extreme factor
/// effects. Throws NotNormalized unless omega(u_A, u_B) = 1.
MaxTensorReport max_tensor_check(const ProductSpace& ps, const JointState& omega);
bool max_tensor_member(const ProductSpace& ps, const JointState& omega);

enum class JointClass { Separable, EntangledMaxConsistent, NotAState };
const char* to_string(JointClass c) noexcept;
JointClass classify(const ProductSpace& ps, const JointState& omega);

/// Extreme points of the maximal tensor product: normalized bilinear
/// functionals nonnegative on all pairs of factor effects. Throws TooLarge
/// when the active-set enumeration would exceed 5e6 bases.
std::vector<JointState> max_tensor_extreme_points(const ProductSpace& ps);

/// True iff every extreme point of the maximal tensor product is a product of
/// factor vertices, i.e. min and max tensor products coincide. Factors must
/// satisfy V_A * V_B <= 16.
bool classical_collapse_check(const StateSpace& a, const StateSpace& b);

/// Maximally nonlocal box on two squares (regular_polygon(4)): binary
/// measurements s = x + y and t = x - y on each side with correlators
/// <ss> = <st> = <ts> = 1, <tt> = -1 and uniform marginals.
JointState pr_box(const ProductSpace& ps);

}  // namespace gptinfo
