#include "gptinfo/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gptinfo/error.hpp"

namespace gptinfo {
namespace {

constexpr int kGridPoints = 1001;
constexpr double kShapeTol = 1e-7;
constexpr double kIdentityTol = 1e-9;
// Largest outcome count considered when bounding the range of sum_i phi(p_i).
constexpr int kMaxOutcomes = 256;

std::string tagged(const char* family, double parameter) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s:%.12g", family, parameter);
  return buf;
}

bool phi_has_shape(const EntropicPair::Map& phi, bool concave) {
  const double step = 1.0 / (kGridPoints - 1);
  for (int i = 1; i + 1 < kGridPoints; ++i) {
    const double d2 = phi((i - 1) * step) - 2.0 * phi(i * step) + phi((i + 1) * step);
    if (concave ? d2 > kShapeTol : d2 < -kShapeTol) return false;
  }
  return true;
}

bool h_is_monotone(const EntropicPair::Map& h, double lo, double hi, bool increasing) {
  if (hi < lo) std::swap(lo, hi);
  const double step = (hi - lo) / (kGridPoints - 1);
  double prev = h(lo);
  for (int i = 1; i < kGridPoints; ++i) {
    const double cur = h(lo + i * step);
    if (!std::isfinite(cur)) return false;
    if (increasing ? cur < prev - kShapeTol : cur > prev + kShapeTol) return false;
    prev = cur;
  }
  return true;
}

bool regime_holds(const EntropicPair::Map& h, const EntropicPair::Map& phi, Regime r) {
  const bool concave = r == Regime::IncreasingConcave;
  if (!phi_has_shape(phi, concave)) return false;
  // Concave phi with phi(0) = 0 keeps sum_i phi(p_i) between phi(1) and
  // N phi(1/N); the convex case reverses the bounds.
  double extreme = phi(1.0);
  for (int n = 1; n <= kMaxOutcomes; ++n) {
    const double v = n * phi(1.0 / n);
    extreme = concave ? std::max(extreme, v) : std::min(extreme, v);
  }
  return h_is_monotone(h, phi(1.0), extreme, concave);
}

}  // namespace

const char* to_string(Regime r) noexcept {
  return r == Regime::IncreasingConcave ? "h-increasing/phi-concave"
                                        : "h-decreasing/phi-convex";
}

SampledMap::SampledMap(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2)
    throw Error(ErrorCode::InvalidPair, "sampled map needs >= 2 matching (x, y) samples");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
      throw Error(ErrorCode::InvalidPair, "non-finite sample");
    if (i > 0 && !(x_[i] > x_[i - 1]))
      throw Error(ErrorCode::InvalidPair, "sample abscissae must be strictly increasing");
  }
}

double SampledMap::operator()(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  hi = std::clamp<std::size_t>(hi, 1, x_.size() - 1);
  const std::size_t lo = hi - 1;
  const double w = (t - x_[lo]) / (x_[hi] - x_[lo]);
  return y_[lo] + w * (y_[hi] - y_[lo]);
}

EntropicPair::EntropicPair(Map h, Map phi, std::optional<Regime> regime, std::string name)
    : h_(std::move(h)), phi_(std::move(phi)), name_(std::move(name)) {
  if (!h_ || !phi_) throw Error(ErrorCode::InvalidPair, "missing map");
  if (std::abs(phi_(0.0)) > kIdentityTol)
    throw Error(ErrorCode::InvalidPair, "phi(0) = " + std::to_string(phi_(0.0)) + ", expected 0");
  if (std::abs(h_(phi_(1.0))) > kIdentityTol)
    throw Error(ErrorCode::InvalidPair, "h(phi(1)) != 0");
  if (regime) {
    if (!regime_holds(h_, phi_, *regime))
      throw Error(ErrorCode::InvalidPair, std::string("regime ") + to_string(*regime) +
                                              " does not hold on the validation grid");
    regime_ = *regime;
    return;
  }
  const bool concave_ok = regime_holds(h_, phi_, Regime::IncreasingConcave);
  const bool convex_ok = regime_holds(h_, phi_, Regime::DecreasingConvex);
  if (!concave_ok && !convex_ok)
    throw Error(ErrorCode::InvalidPair,
                "neither h-increasing/phi-concave nor h-decreasing/phi-convex");
  if (concave_ok && convex_ok) {
    // Nearly linear phi passes both shape checks; h's slope at phi(1) decides.
    const double at = phi_(1.0);
    regime_ = h_(at + 1e-3) >= h_(at - 1e-3) ? Regime::IncreasingConcave
                                             : Regime::DecreasingConvex;
  } else {
    regime_ = concave_ok ? Regime::IncreasingConcave : Regime::DecreasingConvex;
  }
}

double EntropicPair::phi(double p) const { return p < kProbTol ? 0.0 : phi_(p); }

EntropicPair EntropicPair::shannon() {
  EntropicPair pair([](double x) { return x; },
                    [](double p) { return p <= 0.0 ? 0.0 : -p * std::log(p); },
                    Regime::IncreasingConcave, "shannon");
  pair.preset_ = Preset{PresetKind::Shannon, 1.0};
  return pair;
}

EntropicPair EntropicPair::renyi(double alpha) {
  if (!(alpha > 0.0) || std::abs(alpha - 1.0) < 1e-12 || !std::isfinite(alpha))
    throw Error(ErrorCode::BadParameter, "renyi order must be > 0 and != 1");
  EntropicPair pair([alpha](double x) { return std::log(x) / (1.0 - alpha); },
                    [alpha](double p) { return p <= 0.0 ? 0.0 : std::pow(p, alpha); },
                    std::nullopt, tagged("renyi", alpha));
  pair.preset_ = Preset{PresetKind::Renyi, alpha};
  return pair;
}

EntropicPair EntropicPair::tsallis(double q) {
  if (!(q > 0.0) || std::abs(q - 1.0) < 1e-12 || !std::isfinite(q))
    throw Error(ErrorCode::BadParameter, "tsallis index must be > 0 and != 1");
  EntropicPair pair([q](double x) { return (x - 1.0) / (1.0 - q); },
                    [q](double p) { return p <= 0.0 ? 0.0 : std::pow(p, q); },
                    std::nullopt, tagged("tsallis", q));
  pair.preset_ = Preset{PresetKind::Tsallis, q};
  return pair;
}

EntropicPair EntropicPair::sampled(SampledMap h, SampledMap phi, std::optional<Regime> regime) {
  return EntropicPair([h = std::move(h)](double x) { return h(x); },
                      [phi = std::move(phi)](double p) { return phi(p); }, regime, "custom");
}

EntropicPair make_preset(PresetKind kind, double parameter) {
  switch (kind) {
    case PresetKind::Shannon: return EntropicPair::shannon();
    case PresetKind::Renyi: return EntropicPair::renyi(parameter);
    case PresetKind::Tsallis: return EntropicPair::tsallis(parameter);
  }
  throw Error(ErrorCode::BadParameter, "unknown preset");
}

EntropicPair parse_pair_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  if (name == "shannon") {
    if (colon != std::string_view::npos)
      throw Error(ErrorCode::BadParameter, "shannon takes no parameter");
    return EntropicPair::shannon();
  }
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::BadParameter, "pair '" + std::string(spec) + "' needs a parameter");
  const std::string arg(spec.substr(colon + 1));
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != arg.size())
    throw Error(ErrorCode::BadParameter, "bad numeric parameter '" + arg + "'");
  if (name == "renyi") return EntropicPair::renyi(value);
  if (name == "tsallis") return EntropicPair::tsallis(value);
  throw Error(ErrorCode::BadParameter, "unknown pair '" + std::string(name) + "'");
}

double classical_entropy(const EntropicPair& pair, const ProbVector& p) {
  double sum = 0.0;
  for (double x : p) sum += pair.phi(x);
  return pair.h(sum) + 0.0;
}

double entropy_upper_bound(const EntropicPair& pair, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "N must be positive");
  const double nd = static_cast<double>(n);
  return pair.h(nd * pair.phi(1.0 / nd)) + 0.0;
}

}  // namespace gptinfo
