#include "gptinfo/gpt_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "gptinfo/error.hpp"

namespace gptinfo {
namespace {

double dot(const std::vector<double>& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Eigen::MatrixXd vertex_matrix(const std::vector<Point>& vertices) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(vertices.size()),
                    static_cast<Eigen::Index>(vertices.front().size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t k = 0; k < vertices[i].size(); ++k)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = vertices[i][k];
  return a;
}

std::vector<double> vertex_values(const StateSpace& space, const std::vector<double>& coeffs) {
  std::vector<double> f;
  f.reserve(space.size());
  for (const auto& v : space.vertices()) f.push_back(dot(coeffs, v));
  return f;
}

// Lexicographically next combination of k indices out of n; false when done.
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

const char* to_string(ModelKind k) noexcept {
  switch (k) {
    case ModelKind::Simplex: return "simplex";
    case ModelKind::RegularPolygon: return "regular_polygon";
    case ModelKind::CustomPolytope: return "custom_polytope";
  }
  return "unknown";
}

double GptEffect::operator()(const Point& x) const {
  if (x.size() != coeffs_.size())
    throw Error(ErrorCode::DimensionMismatch, "effect and state dimensions differ");
  return dot(coeffs_, x);
}

StateSpace::StateSpace(ModelKind kind, std::size_t n, std::vector<Point> vertices)
    : kind_(kind), n_(n), vertices_(std::move(vertices)), poly_(vertices_) {
  if (vertices_.size() > kMaxVertices)
    throw Error(ErrorCode::DegenerateModel, std::to_string(vertices_.size()) +
                                                " vertices exceed the limit of 16");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (std::abs(vertices_[i].back() - 1.0) > 0.0)
      throw Error(ErrorCode::DegenerateModel, "vertex lacks the homogeneous coordinate");
    for (std::size_t j = 0; j < i; ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < vertices_[i].size(); ++k) {
        const double d = vertices_[i][k] - vertices_[j][k];
        d2 += d * d;
      }
      if (std::sqrt(d2) <= kVertexSeparation)
        throw Error(ErrorCode::DegenerateModel,
                    "vertices " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
  }
}

StateSpace StateSpace::simplex(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DegenerateModel, "simplex needs n >= 2");
  if (n > kMaxVertices) throw Error(ErrorCode::DegenerateModel, "simplex exceeds 16 vertices");
  std::vector<Point> v(n, Point(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    v[i][i] = 1.0;
    v[i][n] = 1.0;
  }
  return StateSpace(ModelKind::Simplex, n, std::move(v));
}

StateSpace StateSpace::regular_polygon(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DegenerateModel, "polygon needs n >= 2");
  if (n > kMaxVertices) throw Error(ErrorCode::DegenerateModel, "polygon exceeds 16 vertices");
  auto snap = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
  std::vector<Point> v;
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    v.push_back({snap(std::cos(angle)), snap(std::sin(angle)), 1.0});
  }
  return StateSpace(ModelKind::RegularPolygon, n, std::move(v));
}

StateSpace StateSpace::custom(const std::vector<Point>& raw_vertices) {
  if (raw_vertices.empty()) throw Error(ErrorCode::DegenerateModel, "no vertices");
  if (raw_vertices.size() > kMaxVertices)
    throw Error(ErrorCode::DegenerateModel, "custom polytope exceeds 16 vertices");
  const std::size_t m = raw_vertices.front().size();
  if (m == 0) throw Error(ErrorCode::DegenerateModel, "zero-dimensional vertices");
  std::vector<Point> v;
  for (const auto& r : raw_vertices) {
    if (r.size() != m) throw Error(ErrorCode::DimensionMismatch, "ragged vertex list");
    Point h = r;
    h.push_back(1.0);
    v.push_back(std::move(h));
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(vertex_matrix(v));
  if (static_cast<std::size_t>(lu.rank()) != m + 1)
    throw Error(ErrorCode::DegenerateModel, "vertices do not affinely span R^" + std::to_string(m));
  StateSpace space(ModelKind::CustomPolytope, v.size(), v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::vector<Point> others;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (j != i) others.push_back(v[j]);
    if (!others.empty() && membership(v[i], Polytope(others)))
      throw Error(ErrorCode::DegenerateModel,
                  "vertex " + std::to_string(i) + " is not an extreme point");
  }
  return space;
}

GptState StateSpace::state(const Point& homogeneous) const {
  if (homogeneous.size() != dimension())
    throw Error(ErrorCode::DimensionMismatch, "state has dimension " +
                                                  std::to_string(homogeneous.size()) +
                                                  ", model has " + std::to_string(dimension()));
  if (std::abs(homogeneous.back() - 1.0) > kEffectTol)
    throw Error(ErrorCode::NotAState, "unit functional is not 1");
  if (!membership(homogeneous, poly_))
    throw Error(ErrorCode::NotAState, "point lies outside the state polytope");
  Point c = homogeneous;
  c.back() = 1.0;
  return GptState(std::move(c));
}

GptState StateSpace::state_from_raw(const Point& raw) const {
  Point h = raw;
  h.push_back(1.0);
  return state(h);
}

GptState StateSpace::vertex_state(std::size_t i) const {
  if (i >= size()) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
  return GptState(vertices_[i]);
}

GptState StateSpace::mixture(std::span<const double> weights) const {
  if (weights.size() != size())
    throw Error(ErrorCode::DimensionMismatch, "mixture needs one weight per vertex");
  const ProbVector w{std::vector<double>(weights.begin(), weights.end())};
  Point c(dimension(), 0.0);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t k = 0; k < dimension(); ++k) c[k] += w[i] * vertices_[i][k];
  c.back() = 1.0;
  return GptState(std::move(c));
}

GptEffect StateSpace::effect(std::vector<double> coeffs) const {
  if (coeffs.size() != dimension())
    throw Error(ErrorCode::DimensionMismatch, "effect has dimension " +
                                                  std::to_string(coeffs.size()));
  for (const auto& v : vertices_) {
    const double x = dot(coeffs, v);
    if (!(x >= -kEffectTol && x <= 1.0 + kEffectTol))
      throw Error(ErrorCode::InvalidMeasurement, "effect value " + std::to_string(x) +
                                                     " outside [0, 1] on a vertex");
  }
  return GptEffect(std::move(coeffs));
}

GptEffect StateSpace::unit() const {
  std::vector<double> c(dimension(), 0.0);
  c.back() = 1.0;
  return GptEffect(std::move(c));
}

GptEffect StateSpace::zero() const { return GptEffect(std::vector<double>(dimension(), 0.0)); }

double evaluate(const GptEffect& e, const GptState& nu) {
  return std::clamp(e(nu.coords()), 0.0, 1.0);
}

namespace {

// Feasibility program for E_i(states[j]) = delta_ij with the E_i nonnegative
// on every vertex and summing to the unit there. Variables are k free
// coefficient vectors of length d, laid out effect-major.
LinearProgram witness_program(const StateSpace& space, std::span<const GptState> states) {
  const std::size_t k = states.size();
  const std::size_t d = space.dimension();
  LinearProgram lp(k * d);
  std::fill(lp.bounds.begin(), lp.bounds.end(), VariableBounds::free());
  for (const auto& v : space.vertices()) {
    std::vector<double> total(k * d, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> row(k * d, 0.0);
      for (std::size_t t = 0; t < d; ++t) {
        row[i * d + t] = v[t];
        total[i * d + t] = v[t];
      }
      lp.add(std::move(row), Relation::GreaterEq, 0.0);
    }
    lp.add(std::move(total), Relation::Equal, 1.0);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> row(k * d, 0.0);
      for (std::size_t t = 0; t < d; ++t) row[i * d + t] = states[j].coords()[t];
      lp.add(std::move(row), Relation::Equal, i == j ? 1.0 : 0.0);
    }
  return lp;
}

std::vector<GptEffect> split_effects(const StateSpace& space, const std::vector<double>& point,
                                     std::size_t k) {
  const std::size_t d = space.dimension();
  std::vector<GptEffect> effects;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> c(point.begin() + static_cast<std::ptrdiff_t>(i * d),
                          point.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
    for (double& x : c)
      if (std::abs(x) < 1e-13) x = 0.0;
    effects.push_back(space.effect(std::move(c)));
  }
  return effects;
}

void check_states(const StateSpace& space, std::span<const GptState> states) {
  if (states.empty()) throw Error(ErrorCode::InvalidInput, "no states to distinguish");
  for (const auto& s : states)
    if (s.dimension() != space.dimension()) throw Error(ErrorCode::DimensionMismatch, "state from another model");
}

}  // namespace

std::optional<std::vector<GptEffect>> distinguishing_measurement(const StateSpace& space,
                                                                 std::span<const GptState> states) {
  check_states(space, states);
  if (states.size() == 1) return std::vector<GptEffect>{space.unit()};
  const auto res = lp_solve(witness_program(space, states));
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return split_effects(space, res.point, states.size());
}

std::vector<std::vector<GptEffect>> extreme_witnesses(const StateSpace& space,
                                                      std::span<const GptState> states) {
  check_states(space, states);
  const std::size_t k = states.size(), d = space.dimension();
  if (k == 1) return {{space.unit()}};
  auto lp = witness_program(space, states);
  const auto first = lp_solve(lp);
  if (first.status != LpStatus::Optimal) return {};
  std::vector<std::vector<GptEffect>> out{split_effects(space, first.point, k)};
  // Linear effects are pinned down by their values on a spanning set.
  Eigen::MatrixXd span(d, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < d; ++t) span(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = states[j].coords()[t];
  if (static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(span).rank()) == d) return out;
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& v : space.vertices())
      for (Sense sense : {Sense::Maximize, Sense::Minimize}) {
        std::fill(lp.objective.begin(), lp.objective.end(), 0.0);
        for (std::size_t t = 0; t < d; ++t) lp.objective[i * d + t] = v[t];
        lp.sense = sense;
        const auto r = lp_solve(lp);
        if (r.status == LpStatus::Optimal) out.push_back(split_effects(space, r.point, k));
      }
  return out;
}

bool perfectly_distinguishable(const StateSpace& space, std::span<const GptState> states) {
  return distinguishing_measurement(space, states).has_value();
}

std::vector<Frame> enumerate_frames(const StateSpace& space) {
  const std::size_t nv = space.size();
  auto witness = [&](const std::vector<std::size_t>& subset) {
    std::vector<GptState> states;
    for (std::size_t i : subset) states.push_back(space.vertex_state(i));
    return distinguishing_measurement(space, states);
  };

  std::vector<std::size_t> all(nv);
  for (std::size_t i = 0; i < nv; ++i) all[i] = i;
  if (auto m = witness(all)) return {Frame{all, std::move(*m)}};

  // Level-wise search: a set can only be distinguishable if every subset
  // one element smaller is.
  using Level = std::vector<std::pair<std::vector<std::size_t>, std::vector<GptEffect>>>;
  std::vector<Level> levels;
  {
    Level singles;
    for (std::size_t i = 0; i < nv; ++i) singles.push_back({{i}, {space.unit()}});
    levels.push_back(std::move(singles));
  }
  while (!levels.back().empty()) {
    const Level& cur = levels.back();
    std::vector<std::vector<std::size_t>> keys;
    for (const auto& e : cur) keys.push_back(e.first);
    auto known = [&](const std::vector<std::size_t>& s) {
      return std::binary_search(keys.begin(), keys.end(), s);
    };
    Level next;
    for (std::size_t a = 0; a < cur.size(); ++a) {
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        const auto& x = cur[a].first;
        const auto& y = cur[b].first;
        if (!std::equal(x.begin(), x.end() - 1, y.begin())) break;
        std::vector<std::size_t> cand = x;
        cand.push_back(y.back());
        bool pruned = false;
        for (std::size_t drop = 0; drop + 2 < cand.size() && !pruned; ++drop) {
          std::vector<std::size_t> sub;
          for (std::size_t t = 0; t < cand.size(); ++t)
            if (t != drop) sub.push_back(cand[t]);
          pruned = !known(sub);
        }
        if (pruned) continue;
        if (auto m = witness(cand)) next.push_back({std::move(cand), std::move(*m)});
      }
    }
    levels.push_back(std::move(next));
  }

  std::vector<Frame> frames;
  for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
    for (const auto& [set, effects] : levels[l]) {
      bool maximal = true;
      for (const auto& [bigger, unused] : levels[l + 1]) {
        if (std::includes(bigger.begin(), bigger.end(), set.begin(), set.end())) {
          maximal = false;
          break;
        }
      }
      if (maximal) frames.push_back(Frame{set, effects});
    }
  }
  std::sort(frames.begin(), frames.end(),
            [](const Frame& a, const Frame& b) { return a.vertices < b.vertices; });
  return frames;
}

ProbVector restrict_to_frame(const GptState& nu, const Frame& f) {
  std::vector<double> p;
  double total = 0.0;
  for (const auto& e : f.effects) {
    const double x = e(nu.coords());
    p.push_back(x);
    total += x;
  }
  if (std::abs(total - 1.0) > kEffectTol)
    throw Error(ErrorCode::IncompleteFrame, "frame effects sum to " + std::to_string(total));
  for (double& x : p) x = std::max(0.0, x);
  return normalize(p);
}

namespace {

std::vector<GptEffect> extreme_witness_effects(const StateSpace& space, std::span<const GptState> states) {
  std::vector<GptEffect> all;
  for (auto& m : extreme_witnesses(space, states))
    for (auto& e : m) all.push_back(std::move(e));
  return all;
}

}  // namespace

std::vector<GptEffect> extreme_effects(const StateSpace& space) {
  std::vector<GptEffect> out{space.zero(), space.unit()};
  std::vector<std::vector<double>> seen{vertex_values(space, out[0].coeffs()),
                                        vertex_values(space, out[1].coeffs())};
  for (const auto& f : enumerate_frames(space)) {
    std::vector<GptState> states;
    for (std::size_t i : f.vertices) states.push_back(space.vertex_state(i));
    for (const auto& e : extreme_witness_effects(space, states)) {
      auto vals = vertex_values(space, e.coeffs());
      const bool dup = std::any_of(seen.begin(), seen.end(), [&](const auto& s) {
        for (std::size_t i = 0; i < s.size(); ++i)
          if (std::abs(s[i] - vals[i]) > kEffectTol) return false;
        return true;
      });
      if (dup) continue;
      seen.push_back(std::move(vals));
      out.push_back(e);
    }
  }
  return out;
}

std::vector<std::vector<double>> effect_polytope_vertices(const StateSpace& space) {
  const Eigen::MatrixXd a = vertex_matrix(space.vertices());
  const auto nv = static_cast<std::size_t>(a.rows());
  // Effects act on states only through their vertex values f = A c, which
  // range over the column space of A. Parametrize it as f = B z.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const auto r = static_cast<std::size_t>(svd.rank());
  const Eigen::MatrixXd basis = svd.matrixU().leftCols(static_cast<Eigen::Index>(r));

  double combos = 1.0;
  for (std::size_t i = 0; i < r; ++i)
    combos *= static_cast<double>(nv - i) / static_cast<double>(i + 1) * 2.0;
  if (combos > 2e6) throw Error(ErrorCode::TooLarge, "effect polytope enumeration too large");

  std::vector<Eigen::VectorXd> found;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  do {
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < r; ++i) sub.row(static_cast<Eigen::Index>(i)) = basis.row(static_cast<Eigen::Index>(idx[i]));
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (static_cast<std::size_t>(lu.rank()) < r) continue;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
      Eigen::VectorXd rhs(static_cast<Eigen::Index>(r));
      for (std::size_t i = 0; i < r; ++i) rhs(static_cast<Eigen::Index>(i)) = (mask >> i) & 1U ? 1.0 : 0.0;
      const Eigen::VectorXd f = basis * lu.solve(rhs);
      if (f.minCoeff() < -1e-9 || f.maxCoeff() > 1.0 + 1e-9) continue;
      const bool dup = std::any_of(found.begin(), found.end(),
                                   [&](const Eigen::VectorXd& g) { return (g - f).cwiseAbs().maxCoeff() < 1e-9; });
      if (!dup) found.push_back(f);
    }
  } while (next_combination(idx, nv));

  std::vector<std::vector<double>> out;
  for (const auto& f : found) {
    const Eigen::VectorXd c = svd.solve(f);
    std::vector<double> coeffs(c.data(), c.data() + c.size());
    for (double& x : coeffs)
      if (std::abs(x) < 1e-13) x = 0.0;
    out.push_back(std::move(coeffs));
  }
  return out;
}

bool effect_generators_complete(const StateSpace& space) {
  const auto gens = extreme_effects(space);
  std::vector<std::vector<double>> gvals;
  for (const auto& g : gens) gvals.push_back(vertex_values(space, g.coeffs()));
  for (const auto& target : effect_polytope_vertices(space)) {
    const auto f = vertex_values(space, target);
    LinearProgram lp(gvals.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::vector<double> row(gvals.size());
      for (std::size_t g = 0; g < gvals.size(); ++g) row[g] = gvals[g][i];
      lp.add(std::move(row), Relation::Equal, f[i]);
    }
    if (lp_solve(lp).status != LpStatus::Optimal) return false;
  }
  return true;
}

}  // namespace gptinfo
