#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gptinfo/composites.hpp"
#include "gptinfo/entropic.hpp"
#include "gptinfo/gpt_model.hpp"
#include "gptinfo/probvec.hpp"
#include "gptinfo/quantum.hpp"

namespace gptinfo::io {

using nlohmann::json;

/// "0.5,0.25,0.25" -> {0.5, 0.25, 0.25}. Throws InvalidInput on junk.
std::vector<double> parse_number_list(std::string_view text);

json read_json_file(const std::string& path);

/// {"kind": "simplex"|"regular_polygon"|"custom_polytope", "n": int,
///  "vertices": [[...], ...]}
StateSpace model_from_json(const json& j);
json model_to_json(const StateSpace& space);

/// Raw coordinates (homogeneous 1 appended here) or a full homogeneous
/// vector when its length already matches the model.
GptState state_from_coords(const StateSpace& space, const std::vector<double>& coords);

/// Nested arrays of [re, im] pairs; plain real entries are also accepted.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);

DensityMatrix density_from_json(const json& j);
/// {"weights": [...], "states": [matrix, ...]}
Ensemble ensemble_from_json(const json& j);
/// {"effects": [matrix, ...], "rank_one": bool}
Povm povm_from_json(const json& j);

/// Preset string or {"h": {"x": [...], "y": [...]}, "phi": {...},
/// "regime": "increasing_concave"|"decreasing_convex"}.
EntropicPair pair_from_json(const json& j);

/// {"tensor": [[...], ...]} with one row per coordinate of factor A.
JointState joint_from_json(const json& j);

json probvec_to_json(const ProbVector& p);

/// Rounds to 12 significant digits; throws on NaN or infinity.
double round12(double x);

}  // namespace gptinfo::io
