#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gptinfo::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kValidationError = 2;
inline constexpr int kUndefinedSpectrum = 3;

struct RunConfig {
  std::string subcommand;
  std::string model, model_b;    // model JSON paths
  std::string state, other_state;  // comma-separated coordinates
  std::string p, q;              // comma-separated probability vectors
  std::string rho, sigma;        // density-matrix JSON paths
  std::string ensemble, povm, joint;
  std::string pair = "shannon";  // preset spec or path to a custom pair JSON
  std::string family = "renyi";  // sweep parameter family
  double from = 0.5, to = 3.0;
  std::size_t steps = 11;
  std::uint64_t seed = 0;
  std::size_t budget = 2000;
  std::string format = "json";
  bool bits = false;
  bool strict = false;
  bool general = false;
  bool search = false;
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` as one JSON document (CSV rows for sweep); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gptinfo::cli
