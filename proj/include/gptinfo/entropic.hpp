#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gptinfo/probvec.hpp"

namespace gptinfo {

enum class Regime {
  IncreasingConcave,  // h increasing, phi concave
  DecreasingConvex,   // h decreasing, phi convex
};

const char* to_string(Regime r) noexcept;

enum class PresetKind { Shannon, Renyi, Tsallis };

struct Preset {
  PresetKind kind = PresetKind::Shannon;
  double parameter = 1.0;  // alpha for Renyi, q for Tsallis; unused for Shannon
};

/// Piecewise-linear map through sampled (x, y) points; linear extrapolation
/// past both ends. Abscissae must be strictly increasing.
class SampledMap {
 public:
  SampledMap(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }

 private:
  std::vector<double> x_, y_;
};

/// An (h, phi) pair: H(p) = h(sum_i phi(p_i)).
///
/// Construction validates phi(0) = 0 and h(phi(1)) = 0, phi's concavity or
/// convexity from second differences on a 1001-point grid of [0, 1], and the
/// monotonicity of h over the range sum_i phi(p_i) can reach. The regime is
/// detected from those checks, or verified if one is supplied.
class EntropicPair {
 public:
  using Map = std::function<double(double)>;

  EntropicPair(Map h, Map phi, std::optional<Regime> regime = std::nullopt,
               std::string name = "custom");

  static EntropicPair shannon();
  static EntropicPair renyi(double alpha);
  static EntropicPair tsallis(double q);

  /// Grid-defined pair, the form custom JSON descriptors take.
  static EntropicPair sampled(SampledMap h, SampledMap phi,
                              std::optional<Regime> regime = std::nullopt);

  double h(double x) const { return h_(x); }
  /// phi with phi(p) := 0 below kProbTol.
  double phi(double p) const;

  Regime regime() const noexcept { return regime_; }
  const std::string& name() const noexcept { return name_; }
  const std::optional<Preset>& preset() const noexcept { return preset_; }

 private:
  Map h_, phi_;
  Regime regime_ = Regime::IncreasingConcave;
  std::string name_;
  std::optional<Preset> preset_;
};

/// Builds one of the named presets. Renyi and Tsallis need parameter > 0 and
/// != 1 (BadParameter otherwise).
EntropicPair make_preset(PresetKind kind, double parameter = 1.0);

/// Parses "shannon", "renyi:2.0" or "tsallis:0.5".
EntropicPair parse_pair_spec(std::string_view spec);

/// H(p) = h(sum_i phi(p_i)), natural-log units for the presets.
double classical_entropy(const EntropicPair& pair, const ProbVector& p);

/// h(N phi(1/N)), the value at the uniform distribution.
double entropy_upper_bound(const EntropicPair& pair, std::size_t n);

}  // namespace gptinfo
