#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gptinfo/convex.hpp"
#include "gptinfo/entropic.hpp"
#include "gptinfo/gpt_model.hpp"
#include "gptinfo/probvec.hpp"

namespace gptinfo {

/// nu = sum_i weights[i] * vertex(support[i]); weights sorted decreasing,
/// zero weights trimmed.
struct SpectralDecomposition {
  ProbVector weights;
  std::vector<std::size_t> support;
};

struct SpectrumResult {
  /// Present iff the decomposition set has a majorant.
  std::optional<SpectralDecomposition> decomposition;
  /// T_k = max over decompositions of the sum of the k largest weights, for
  /// k = 1 .. K where T_K is the first to reach one.
  std::vector<double> topk_bounds;
  /// Weights over all vertices from the deepest chain prefix the search
  /// reached; equals the majorant when it exists.
  std::vector<double> best_candidate;
  /// Number of leading T_k the best candidate attains simultaneously.
  std::size_t candidate_depth = 0;

  bool exists() const noexcept { return decomposition.has_value(); }
};

/// Variables p_1..p_V >= 0 with sum p = 1 and sum p_i v_i = nu. Throws
/// NotAState when nu is outside the model.
LinearProgram decomposition_constraints(const StateSpace& space, const GptState& nu);

/// Majorant of the set of decomposition weight vectors, when it exists.
SpectrumResult generalized_spectrum(const StateSpace& space, const GptState& nu);

/// mu ≺ nu through the generalized spectra. Throws SpectrumUndefined naming
/// the state without a majorant.
bool generalized_majorizes(const StateSpace& space, const GptState& nu, const GptState& mu);

struct PhiTerm {
  double coefficient;
  std::size_t vertex;
};

/// Formal mixture sum_i phi(p_i) nu_i over the spectral decomposition.
std::vector<PhiTerm> apply_phi(const StateSpace& space, const GptState& nu,
                               const std::function<double(double)>& phi);
std::vector<PhiTerm> apply_phi(const StateSpace& space, const GptState& nu,
                               const EntropicPair& pair);

/// Unit functional applied to a formal mixture.
double unit_value(const StateSpace& space, const std::vector<PhiTerm>& terms);

/// h(u(phi(nu))), equal to the classical entropy of the spectrum.
double spectral_entropy(const EntropicPair& pair, const StateSpace& space, const GptState& nu);

struct FrameEntropy {
  double value;
  Frame frame;
  std::size_t frame_index;
};

/// Minimum over frames of the entropy of the frame restriction; ties go to
/// the first frame in enumeration order.
FrameEntropy frame_entropy(const EntropicPair& pair, const StateSpace& space, const GptState& nu);
FrameEntropy frame_entropy(const EntropicPair& pair, const std::vector<Frame>& frames,
                           const GptState& nu);

}  // namespace gptinfo
