#include "gptinfo/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gptinfo/error.hpp"

namespace gptinfo {
namespace {

// Slack when deciding that a subset attains T_k.
constexpr double kOptimalityTol = 1e-9;
// Weights at or below this are dropped from a reported spectrum.
constexpr double kTrimTol = 1e-10;

struct ChainSearch {
  const LinearProgram& skeleton;
  const std::vector<double>& bounds;
  const std::vector<std::vector<std::vector<std::size_t>>>& optimal;  // per level
  std::vector<double> best_point;
  std::size_t best_depth = 0;

  // Skeleton plus sum_{S_j} p = T_j for every set in the chain.
  std::optional<std::vector<double>> feasible(const std::vector<std::vector<std::size_t>>& chain) const {
    LinearProgram lp = skeleton;
    for (std::size_t j = 0; j < chain.size(); ++j) {
      std::vector<double> row(lp.num_vars(), 0.0);
      for (std::size_t i : chain[j]) row[i] = 1.0;
      lp.add(std::move(row), Relation::Equal, bounds[j]);
    }
    auto res = lp_solve(lp);
    if (res.status != LpStatus::Optimal) return std::nullopt;
    return std::move(res.point);
  }

  // Depth-first over nested optimal subsets S_1 ⊂ S_2 ⊂ ...
  bool extend(std::vector<std::vector<std::size_t>>& chain, std::vector<double>& out) {
    const std::size_t depth = chain.size();
    if (depth == bounds.size()) return true;
    for (const auto& s : optimal[depth]) {
      if (depth > 0 && !std::includes(s.begin(), s.end(), chain.back().begin(), chain.back().end()))
        continue;
      chain.push_back(s);
      if (auto p = feasible(chain)) {
        if (chain.size() > best_depth) {
          best_depth = chain.size();
          best_point = *p;
        }
        out = std::move(*p);
        if (extend(chain, out)) return true;
      }
      chain.pop_back();
    }
    return false;
  }
};

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

const SpectralDecomposition& require_spectrum(const SpectrumResult& r, const char* which) {
  if (!r.decomposition)
    throw Error(ErrorCode::SpectrumUndefined, std::string("state ") + which + " has no majorant");
  return *r.decomposition;
}

// The decomposition over affinely independent vertices is unique: the
// barycentric coordinates, read off directly.
SpectrumResult simplex_spectrum(const GptState& nu, std::size_t nv) {
  std::vector<double> point(nu.coords().begin(), nu.coords().begin() + static_cast<std::ptrdiff_t>(nv));
  for (double& x : point) x = std::max(0.0, x);
  std::vector<std::size_t> order(nv);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return point[a] > point[b]; });
  SpectrumResult result;
  std::vector<double> weights;
  std::vector<std::size_t> support;
  double running = 0.0;
  for (std::size_t i : order) {
    if (point[i] <= kTrimTol) break;
    weights.push_back(point[i]);
    support.push_back(i);
    running += point[i];
    result.topk_bounds.push_back(std::min(running, 1.0));
  }
  result.best_candidate = point;
  result.candidate_depth = result.topk_bounds.size();
  result.decomposition = SpectralDecomposition{ProbVector(std::move(weights)), std::move(support)};
  return result;
}

}  // namespace

LinearProgram decomposition_constraints(const StateSpace& space, const GptState& nu) {
  if (nu.dimension() != space.dimension())
    throw Error(ErrorCode::DimensionMismatch, "state from another model");
  if (!membership(nu.coords(), space.polytope()))
    throw Error(ErrorCode::NotAState, "state lies outside the model");
  return decomposition_program(space.vertices(), nu.coords());
}

SpectrumResult generalized_spectrum(const StateSpace& space, const GptState& nu) {
  const LinearProgram skeleton = decomposition_constraints(space, nu);
  const std::size_t nv = space.size();
  if (space.kind() == ModelKind::Simplex) return simplex_spectrum(nu, nv);

  // T_1 first; its per-vertex values bound every larger subset.
  std::vector<double> single(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const std::size_t s[] = {i};
    single[i] = topk_weight_max(skeleton, s);
  }

  std::vector<double> bounds;
  std::vector<std::vector<std::vector<std::size_t>>> optimal;
  for (std::size_t k = 1; k <= nv; ++k) {
    std::vector<std::pair<std::vector<std::size_t>, double>> values;
    double best = -1.0;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    do {
      double value;
      if (k == 1) {
        value = single[idx[0]];
      } else {
        double cap = 0.0;
        for (std::size_t i : idx) cap += single[i];
        if (std::min(1.0, cap) < best - kOptimalityTol) continue;
        value = topk_weight_max(skeleton, idx);
      }
      best = std::max(best, value);
      values.emplace_back(idx, value);
    } while (next_combination(idx, nv));
    best = std::min(best, 1.0);
    std::vector<std::vector<std::size_t>> attaining;
    for (auto& [set, v] : values)
      if (v >= best - kOptimalityTol) attaining.push_back(std::move(set));
    bounds.push_back(best);
    optimal.push_back(std::move(attaining));
    if (best >= 1.0 - kOptimalityTol) break;
  }

  SpectrumResult result;
  result.topk_bounds = bounds;
  ChainSearch search{skeleton, bounds, optimal, {}, 0};
  std::vector<std::vector<std::size_t>> chain;
  std::vector<double> point;
  const bool found = search.extend(chain, point);
  result.best_candidate = search.best_point;
  result.candidate_depth = search.best_depth;
  if (!found) return result;

  std::vector<std::size_t> order(nv);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return point[a] > point[b]; });
  std::vector<double> weights;
  std::vector<std::size_t> support;
  for (std::size_t i : order) {
    if (point[i] <= kTrimTol) break;
    weights.push_back(point[i]);
    support.push_back(i);
  }
  result.decomposition = SpectralDecomposition{normalize(weights), std::move(support)};
  return result;
}

bool generalized_majorizes(const StateSpace& space, const GptState& nu, const GptState& mu) {
  const auto snu = generalized_spectrum(space, nu);
  const auto smu = generalized_spectrum(space, mu);
  return majorizes(require_spectrum(snu, "nu").weights, require_spectrum(smu, "mu").weights);
}

std::vector<PhiTerm> apply_phi(const StateSpace& space, const GptState& nu,
                               const std::function<double(double)>& phi) {
  const auto res = generalized_spectrum(space, nu);
  const auto& dec = require_spectrum(res, "nu");
  std::vector<PhiTerm> terms;
  for (std::size_t i = 0; i < dec.support.size(); ++i)
    terms.push_back({phi(dec.weights[i]), dec.support[i]});
  return terms;
}

std::vector<PhiTerm> apply_phi(const StateSpace& space, const GptState& nu,
                               const EntropicPair& pair) {
  return apply_phi(space, nu, [&pair](double p) { return pair.phi(p); });
}

double unit_value(const StateSpace& space, const std::vector<PhiTerm>& terms) {
  const auto u = space.unit();
  double total = 0.0;
  for (const auto& t : terms) total += t.coefficient * u(space.vertices().at(t.vertex));
  return total;
}

double spectral_entropy(const EntropicPair& pair, const StateSpace& space, const GptState& nu) {
  const auto res = generalized_spectrum(space, nu);
  const auto& dec = require_spectrum(res, "nu");
  const double direct = classical_entropy(pair, dec.weights);
  std::vector<PhiTerm> terms;
  for (std::size_t i = 0; i < dec.support.size(); ++i)
    terms.push_back({pair.phi(dec.weights[i]), dec.support[i]});
  const double via_unit = pair.h(unit_value(space, terms)) + 0.0;
  if (std::abs(direct - via_unit) > 1e-9 * std::max(1.0, std::abs(direct)))
    throw std::logic_error("spectral entropy routes disagree");
  return direct;
}

FrameEntropy frame_entropy(const EntropicPair& pair, const std::vector<Frame>& frames,
                           const GptState& nu) {
  if (frames.empty()) throw Error(ErrorCode::NoFrames, "model admits no frame");
  std::optional<FrameEntropy> best;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const double v = classical_entropy(pair, restrict_to_frame(nu, frames[i]));
    if (!best || v < best->value - 1e-12) best = FrameEntropy{v, frames[i], i};
  }
  return *best;
}

FrameEntropy frame_entropy(const EntropicPair& pair, const StateSpace& space, const GptState& nu) {
  if (nu.dimension() != space.dimension())
    throw Error(ErrorCode::DimensionMismatch, "state from another model");
  return frame_entropy(pair, enumerate_frames(space), nu);
}

}  // namespace gptinfo
