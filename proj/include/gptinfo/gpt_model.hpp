#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gptinfo/convex.hpp"
#include "gptinfo/probvec.hpp"

namespace gptinfo {

inline constexpr std::size_t kMaxVertices = 16;
// Minimum distance between two vertices of a model.
inline constexpr double kVertexSeparation = 1e-9;
// Slack for effect values and frame completeness built from LP output.
inline constexpr double kEffectTol = 1e-8;

enum class ModelKind { Simplex, RegularPolygon, CustomPolytope };

const char* to_string(ModelKind k) noexcept;

class StateSpace;

/// Point of the ambient space whose last (homogeneous) coordinate is one and
/// which lies in the state polytope. Built by StateSpace.
class GptState {
 public:
  const Point& coords() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.size(); }

 private:
  friend class StateSpace;
  explicit GptState(Point coords) : coords_(std::move(coords)) {}
  Point coords_;
};

/// Linear functional on the ambient space (affine on states) whose values on
/// every vertex lie in [0, 1]. Built by StateSpace.
class GptEffect {
 public:
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double operator()(const Point& x) const;

 private:
  friend class StateSpace;
  explicit GptEffect(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}
  std::vector<double> coeffs_;
};

/// A maximal perfectly distinguishable set of pure states, with a measurement
/// that tells them apart: effects[i](vertex vertices[j]) = delta_ij and the
/// effects sum to the unit functional on every state.
struct Frame {
  std::vector<std::size_t> vertices;
  std::vector<GptEffect> effects;
};

/// Polytopic state space. Vertices are the pure states, stored with a final
/// homogeneous coordinate equal to one; the unit functional reads it.
class StateSpace {
 public:
  /// Standard basis of R^n, each with the homogeneous 1 appended.
  static StateSpace simplex(std::size_t n);
  /// Vertices (cos 2 pi k / n, sin 2 pi k / n) on the unit circle.
  static StateSpace regular_polygon(std::size_t n);
  /// Raw vertex coordinates; they must be distinct, extreme and affinely
  /// span their ambient space.
  static StateSpace custom(const std::vector<Point>& raw_vertices);

  ModelKind kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return vertices_.front().size(); }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Polytope& polytope() const noexcept { return poly_; }

  /// State from homogeneous coordinates (last coordinate 1). Throws NotAState
  /// when the point is outside the polytope.
  GptState state(const Point& homogeneous) const;
  /// State from raw coordinates; the homogeneous 1 is appended.
  GptState state_from_raw(const Point& raw) const;
  GptState vertex_state(std::size_t i) const;
  /// sum_i w_i v_i over all vertices.
  GptState mixture(std::span<const double> weights) const;

  /// Validated effect; throws InvalidMeasurement when some vertex value falls
  /// outside [0, 1].
  GptEffect effect(std::vector<double> coeffs) const;
  GptEffect unit() const;
  GptEffect zero() const;

 private:
  StateSpace(ModelKind kind, std::size_t n, std::vector<Point> vertices);

  ModelKind kind_;
  std::size_t n_;
  std::vector<Point> vertices_;
  Polytope poly_;
};

/// E(nu), clamped to [0, 1].
double evaluate(const GptEffect& e, const GptState& nu);

/// A measurement with E_i(states[j]) = delta_ij, if one exists.
std::optional<std::vector<GptEffect>> distinguishing_measurement(const StateSpace& space,
                                                                 std::span<const GptState> states);

/// Witnessing measurements at vertices of the set of all witnesses: one per
/// optimum of E_i(v) (max and min, every effect i and vertex v). Empty when
/// the states are not perfectly distinguishable; a single measurement when
/// the states span the ambient space and the witness is unique.
std::vector<std::vector<GptEffect>> extreme_witnesses(const StateSpace& space,
                                                      std::span<const GptState> states);
bool perfectly_distinguishable(const StateSpace& space, std::span<const GptState> states);

/// All maximal perfectly distinguishable vertex subsets, sorted
/// lexicographically by vertex index.
std::vector<Frame> enumerate_frames(const StateSpace& space);

/// (E_1(nu), ..., E_k(nu)). Throws IncompleteFrame if the values do not sum
/// to one within kEffectTol.
ProbVector restrict_to_frame(const GptState& nu, const Frame& f);

/// The effects that max-tensor membership is checked against: 0, the unit
/// and the effects of every extreme witnessing measurement of every frame.
std::vector<GptEffect> extreme_effects(const StateSpace& space);

/// Vertices of the effect polytope {c : 0 <= c.v <= 1 for all vertices v},
/// restricted to the linear span of the vertices. Enumerated by active sets;
/// throws TooLarge above 2e6 candidate bases.
std::vector<std::vector<double>> effect_polytope_vertices(const StateSpace& space);

/// True iff every effect-polytope vertex lies in the cone generated by
/// extreme_effects(space), i.e. nonnegativity on the generators implies
/// nonnegativity on all effects.
bool effect_generators_complete(const StateSpace& space);

}  // namespace gptinfo
