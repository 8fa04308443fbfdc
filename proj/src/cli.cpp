#include "gptinfo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gptinfo/composites.hpp"
#include "gptinfo/error.hpp"
#include "gptinfo/io.hpp"
#include "gptinfo/spectra.hpp"

namespace gptinfo::cli {
namespace {

using io::json;
using io::round12;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised after the JSON result is printed, to turn NoMajorant into exit 3.
struct Undefined {};

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  int dispatch() {
    const auto& s = cfg_.subcommand;
    if (s == "entropy") return cfg_.general ? general_entropy() : entropy();
    if (s == "qentropy") return qentropy();
    if (s == "spectrum") return spectrum();
    if (s == "majorize") return majorize();
    if (s == "frames") return frames();
    if (s == "separable") return separable();
    if (s == "holevo") return holevo();
    if (s == "sweep") return sweep();
    throw Usage("unknown subcommand '" + s + "'");
  }

 private:
  // Entropy-valued numbers; --bits rescales here and nowhere else.
  double ent(double nats) const { return round12(cfg_.bits ? nats / std::numbers::ln2 : nats); }
  const char* units() const { return cfg_.bits ? "bits" : "nats"; }

  void require(const std::string& value, const char* flag) const {
    if (value.empty()) throw Usage(cfg_.subcommand + ": " + flag + " is required");
  }

  int emit(const json& j) {
    out_ << j.dump() << '\n';
    return kOk;
  }

  EntropicPair pair_for(const std::string& spec) const {
    if (spec.size() > 5 && spec.ends_with(".json")) return io::pair_from_json(io::read_json_file(spec));
    return parse_pair_spec(spec);
  }
  EntropicPair pair() const { return pair_for(cfg_.pair); }

  StateSpace model(const std::string& path, const char* flag) const {
    require(path, flag);
    return io::model_from_json(io::read_json_file(path));
  }

  GptState state(const StateSpace& space, const std::string& coords, const char* flag) const {
    require(coords, flag);
    return io::state_from_coords(space, io::parse_number_list(coords));
  }

  ProbVector probs(const std::string& text, const char* flag) const {
    require(text, flag);
    return ProbVector(io::parse_number_list(text));
  }

  int entropy() {
    const auto p = probs(cfg_.p, "--p");
    const auto h = pair();
    return emit({{"pair", h.name()},
                 {"units", units()},
                 {"value", ent(classical_entropy(h, p))},
                 {"upper_bound", ent(entropy_upper_bound(h, p.size()))}});
  }

  int general_entropy() {
    const auto space = model(cfg_.model, "--model");
    const auto nu = state(space, cfg_.state, "--state");
    const auto h = pair();
    const auto fe = frame_entropy(h, space, nu);
    const auto spec = generalized_spectrum(space, nu);
    json j{{"pair", h.name()},
           {"units", units()},
           {"frame_entropy", ent(fe.value)},
           {"frame", fe.frame.vertices},
           {"spectrum_exists", spec.exists()},
           {"spectral_entropy", nullptr}};
    if (spec.exists()) j["spectral_entropy"] = ent(classical_entropy(h, spec.decomposition->weights));
    emit(j);
    if (!spec.exists() && cfg_.strict) throw Undefined{};
    return kOk;
  }

  int qentropy() {
    require(cfg_.rho, "--rho");
    const auto rho = io::density_from_json(io::read_json_file(cfg_.rho));
    const auto h = pair();
    json j{{"pair", h.name()},
           {"units", units()},
           {"value", ent(quantum_entropy(h, rho))},
           {"spectrum", io::probvec_to_json(eigen_spectrum(rho))}};
    if (cfg_.search) {
      const auto res = quantum_entropy_min_search(h, rho, cfg_.budget, cfg_.seed);
      json effects = json::array();
      for (const auto& e : res.witness.effects()) effects.push_back(io::matrix_to_json(e));
      j["search"] = {{"value", ent(res.value)},
                     {"budget", cfg_.budget},
                     {"seed", cfg_.seed},
                     {"witness", {{"rank_one", true}, {"effects", effects}}}};
    }
    return emit(j);
  }

  static json spectrum_json(const SpectrumResult& r) {
    json bounds = json::array();
    for (double t : r.topk_bounds) bounds.push_back(round12(t));
    json j{{"exists", r.exists()}, {"topk_bounds", bounds}};
    if (r.exists()) {
      j["weights"] = io::probvec_to_json(r.decomposition->weights);
      j["support"] = r.decomposition->support;
    } else {
      json cand = json::array();
      for (double x : r.best_candidate) cand.push_back(round12(x));
      j["best_candidate"] = cand;
      j["candidate_depth"] = r.candidate_depth;
    }
    return j;
  }

  int spectrum() {
    const auto space = model(cfg_.model, "--model");
    const auto nu = state(space, cfg_.state, "--state");
    const auto r = generalized_spectrum(space, nu);
    emit(spectrum_json(r));
    if (!r.exists() && cfg_.strict) throw Undefined{};
    return kOk;
  }

  int majorize() {
    if (!cfg_.p.empty() || !cfg_.q.empty()) {
      const auto p = probs(cfg_.p, "--p");
      const auto q = probs(cfg_.q, "--q");
      return emit({{"mode", "classical"}, {"majorized", majorizes(q, p)}});
    }
    if (!cfg_.rho.empty() || !cfg_.sigma.empty()) {
      require(cfg_.rho, "--rho");
      require(cfg_.sigma, "--sigma");
      const auto rho = io::density_from_json(io::read_json_file(cfg_.rho));
      const auto sigma = io::density_from_json(io::read_json_file(cfg_.sigma));
      return emit({{"mode", "quantum"}, {"majorized", quantum_majorizes(sigma, rho)}});
    }
    const auto space = model(cfg_.model, "--model");
    const auto mu = state(space, cfg_.state, "--state");
    const auto nu = state(space, cfg_.other_state, "--other");
    const auto smu = generalized_spectrum(space, mu);
    const auto snu = generalized_spectrum(space, nu);
    json j{{"mode", "general"}, {"mu", spectrum_json(smu)}, {"nu", spectrum_json(snu)}};
    if (smu.exists() && snu.exists()) {
      j["majorized"] = majorizes(snu.decomposition->weights, smu.decomposition->weights);
      return emit(j);
    }
    j["majorized"] = nullptr;
    emit(j);
    if (cfg_.strict) throw Undefined{};
    return kOk;
  }

  int frames() {
    const auto space = model(cfg_.model, "--model");
    json list = json::array();
    for (const auto& f : enumerate_frames(space)) {
      json effects = json::array();
      for (const auto& e : f.effects) {
        json c = json::array();
        for (double x : e.coeffs()) c.push_back(round12(x));
        effects.push_back(c);
      }
      list.push_back({{"vertices", f.vertices}, {"effects", effects}});
    }
    return emit({{"count", list.size()}, {"frames", list}});
  }

  int separable() {
    const auto a = model(cfg_.model, "--model");
    const auto b = model(cfg_.model_b, "--model-b");
    require(cfg_.joint, "--joint");
    const auto omega = io::joint_from_json(io::read_json_file(cfg_.joint));
    const ProductSpace ps(a, b);
    const auto sep = is_separable(ps, omega);
    const auto max = max_tensor_check(ps, omega);
    json j{{"separable", sep.separable}, {"max_member", max.member}};
    j["classification"] = to_string(sep.separable   ? JointClass::Separable
                                    : max.member    ? JointClass::EntangledMaxConsistent
                                                    : JointClass::NotAState);
    if (sep.separable) {
      json w = json::array();
      for (const auto& t : sep.witness)
        w.push_back({{"weight", round12(t.weight)}, {"a", t.vertex_a}, {"b", t.vertex_b}});
      j["witness"] = w;
    } else {
      j["violation"] = {{"reason", "outside the convex hull of product states"},
                        {"min_effect_pair_value", round12(max.min_value)},
                        {"max_effect_pair_value", round12(max.max_value)}};
    }
    return emit(j);
  }

  int holevo() {
    require(cfg_.ensemble, "--ensemble");
    const auto e = io::ensemble_from_json(io::read_json_file(cfg_.ensemble));
    const double chi = holevo_chi(e);
    const double hx = classical_entropy(EntropicPair::shannon(), e.weights());
    json j{{"units", units()},
           {"chi", ent(chi)},
           {"hx", ent(hx)},
           {"gap", ent(hx - chi)},
           {"strict_gap", hx - chi > kProbTol}};
    if (!cfg_.povm.empty()) {
      const auto m = io::povm_from_json(io::read_json_file(cfg_.povm));
      j["accessible"] = ent(accessible_info_estimate(e, m));
    }
    return emit(j);
  }

  int sweep() {
    if (cfg_.family != "renyi" && cfg_.family != "tsallis")
      throw Usage("sweep: --family must be renyi or tsallis");
    if (cfg_.steps == 0) throw Usage("sweep: --steps must be positive");
    if (cfg_.format != "csv" && cfg_.format != "json") throw Usage("sweep: --format must be csv or json");

    enum class Target { Classical, Quantum, General } target;
    std::optional<ProbVector> p;
    std::optional<DensityMatrix> rho;
    std::optional<StateSpace> space;
    std::optional<GptState> nu;
    std::vector<Frame> frames;
    std::optional<SpectrumResult> spec;
    if (!cfg_.p.empty()) {
      target = Target::Classical;
      p = probs(cfg_.p, "--p");
    } else if (!cfg_.rho.empty()) {
      target = Target::Quantum;
      rho = io::density_from_json(io::read_json_file(cfg_.rho));
    } else if (!cfg_.model.empty()) {
      target = Target::General;
      space = model(cfg_.model, "--model");
      nu = state(*space, cfg_.state, "--state");
      frames = enumerate_frames(*space);
      spec = generalized_spectrum(*space, *nu);
    } else {
      throw Usage("sweep: one of --p, --rho or --model/--state is required");
    }

    std::vector<std::vector<double>> rows(cfg_.steps);
    for (std::size_t i = 0; i < cfg_.steps; ++i) {
      const double t = cfg_.steps == 1 ? cfg_.from
                                       : cfg_.from + (cfg_.to - cfg_.from) * static_cast<double>(i) /
                                                         static_cast<double>(cfg_.steps - 1);
      // Both families tend to Shannon at parameter 1.
      const EntropicPair h = std::abs(t - 1.0) < 1e-12 ? EntropicPair::shannon()
                             : cfg_.family == "renyi"  ? EntropicPair::renyi(t)
                                                       : EntropicPair::tsallis(t);
      switch (target) {
        case Target::Classical: rows[i] = {t, classical_entropy(h, *p)}; break;
        case Target::Quantum: rows[i] = {t, quantum_entropy(h, *rho)}; break;
        case Target::General: {
          const double fv = frame_entropy(h, frames, *nu).value;
          const double sv = spec->exists() ? classical_entropy(h, spec->decomposition->weights) : NAN;
          rows[i] = {t, fv, sv};
          break;
        }
      }
    }

    const std::vector<std::string> header =
        target == Target::General ? std::vector<std::string>{"parameter", "frame_entropy", "spectral_entropy"}
                                  : std::vector<std::string>{"parameter", "value"};
    if (cfg_.format == "json") {
      json list = json::array();
      for (const auto& r : rows) {
        json row;
        for (std::size_t c = 0; c < r.size(); ++c) {
          if (std::isnan(r[c])) row[header[c]] = nullptr;
          else row[header[c]] = c == 0 ? round12(r[c]) : ent(r[c]);
        }
        list.push_back(row);
      }
      return emit({{"family", cfg_.family}, {"units", units()}, {"rows", list}});
    }
    for (std::size_t c = 0; c < header.size(); ++c) out_ << (c ? "," : "") << header[c];
    out_ << '\n';
    char buf[64];
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c) out_ << ',';
        if (std::isnan(r[c])) continue;  // empty cell: spectrum undefined
        std::snprintf(buf, sizeof buf, "%.12g", c == 0 ? round12(r[c]) : ent(r[c]));
        out_ << buf;
      }
      out_ << '\n';
    }
    return kOk;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Generalized (h, phi)-entropies, spectra and separability for classical, quantum "
               "and polytopic state spaces."};
  app.name("gptinfo");
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto add_pair = [&](CLI::App* c) {
    c->add_option("--pair", cfg.pair, "shannon | renyi:<alpha> | tsallis:<q> | path to a custom pair JSON")
        ->capture_default_str();
  };
  auto add_bits = [&](CLI::App* c) { c->add_flag("--bits", cfg.bits, "Report entropies in bits"); };
  auto add_model = [&](CLI::App* c) {
    c->add_option("--model", cfg.model, "Model JSON file");
    c->add_option("--state", cfg.state, "State coordinates, comma separated");
  };

  auto* entropy = app.add_subcommand("entropy", "Classical (h, phi)-entropy, or both generalized definitions");
  add_pair(entropy);
  add_bits(entropy);
  add_model(entropy);
  entropy->add_option("--p", cfg.p, "Probability vector, comma separated");
  entropy->add_flag("--general", cfg.general, "Frame-minimum and spectral entropies of a model state");
  entropy->add_flag("--strict", cfg.strict, "Exit 3 when the spectrum is undefined");

  auto* qentropy = app.add_subcommand("qentropy", "Quantum (h, phi)-entropy of a density matrix");
  add_pair(qentropy);
  add_bits(qentropy);
  qentropy->add_option("--rho", cfg.rho, "Density matrix JSON file");
  qentropy->add_flag("--search", cfg.search, "Also minimize over rank-one POVMs");
  qentropy->add_option("--budget", cfg.budget, "POVM evaluations for --search")->capture_default_str();
  qentropy->add_option("--seed", cfg.seed, "Random seed for --search")->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "Generalized spectrum of a model state");
  add_model(spectrum);
  spectrum->add_flag("--strict", cfg.strict, "Exit 3 when no majorant exists");

  auto* majorize = app.add_subcommand("majorize", "Majorization test (p ≺ q, rho ≺ sigma, or state ≺ other)");
  add_model(majorize);
  majorize->add_option("--other", cfg.other_state, "Second model state (the candidate majorant)");
  majorize->add_option("--p", cfg.p, "Probability vector p");
  majorize->add_option("--q", cfg.q, "Probability vector q");
  majorize->add_option("--rho", cfg.rho, "Density matrix JSON file (majorized side)");
  majorize->add_option("--sigma", cfg.sigma, "Density matrix JSON file (majorizing side)");
  majorize->add_flag("--strict", cfg.strict, "Exit 3 when a spectrum is undefined");

  auto* frames = app.add_subcommand("frames", "Maximal perfectly distinguishable vertex sets");
  frames->add_option("--model", cfg.model, "Model JSON file");

  auto* separable = app.add_subcommand("separable", "Separability of a bipartite joint state");
  separable->add_option("--model", cfg.model, "Model JSON file for party A");
  separable->add_option("--model-b", cfg.model_b, "Model JSON file for party B");
  separable->add_option("--joint", cfg.joint, "Joint state JSON file ({\"tensor\": [[...]]})");

  auto* holevo = app.add_subcommand("holevo", "Holevo quantity of an ensemble");
  add_bits(holevo);
  holevo->add_option("--ensemble", cfg.ensemble, "Ensemble JSON file");
  holevo->add_option("--povm", cfg.povm, "POVM JSON file for the accessible-information estimate");

  auto* sweep = app.add_subcommand("sweep", "Entropy over a Renyi or Tsallis parameter grid");
  add_bits(sweep);
  add_model(sweep);
  sweep->add_option("--family", cfg.family, "renyi | tsallis")->capture_default_str();
  sweep->add_option("--from", cfg.from, "First parameter")->capture_default_str();
  sweep->add_option("--to", cfg.to, "Last parameter")->capture_default_str();
  sweep->add_option("--steps", cfg.steps, "Grid points")->capture_default_str();
  sweep->add_option("--p", cfg.p, "Probability vector");
  sweep->add_option("--rho", cfg.rho, "Density matrix JSON file");
  sweep->add_option("--format", cfg.format, "csv | json")->capture_default_str();
  sweep->add_option("--seed", cfg.seed, "Random seed (unused by deterministic targets)");

  if (!args.empty() && !args.front().starts_with("-") && app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "gptinfo: unknown subcommand '" << args.front() << "'\n";
    return kValidationError;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kValidationError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.subcommand == "sweep" && cfg.format == "json" && sweep->count("--format") == 0)
    cfg.format = "csv";

  try {
    return Runner(cfg, out).dispatch();
  } catch (const Undefined&) {
    err << "gptinfo: spectrum undefined (no majorant)\n";
    return kUndefinedSpectrum;
  } catch (const Usage& e) {
    err << "gptinfo: " << e.what() << '\n';
    return kValidationError;
  } catch (const Error& e) {
    err << "gptinfo " << cfg.subcommand << ": " << e.what() << '\n';
    if (e.code() == ErrorCode::SpectrumUndefined && !cfg.strict) return kOk;
    return e.code() == ErrorCode::SpectrumUndefined ? kUndefinedSpectrum : kValidationError;
  } catch (const std::exception& e) {
    err << "gptinfo " << cfg.subcommand << ": internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace gptinfo::cli
