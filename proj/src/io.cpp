#include "gptinfo/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "gptinfo/error.hpp"

namespace gptinfo::io {
namespace {

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

SampledMap sampled_map(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw Error(ErrorCode::InvalidPair, std::string(what) + " needs \"x\" and \"y\" samples");
  return SampledMap(number_array(j.at("x"), what), number_array(j.at("y"), what));
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string token(text.substr(pos, comma - pos));
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    token = first == std::string::npos ? "" : token.substr(first, last - first + 1);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size())
      throw Error(ErrorCode::InvalidInput, "cannot parse number '" + token + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

StateSpace model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error(ErrorCode::InvalidInput, "model needs a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  auto count = [&] {
    if (!j.contains("n") || !j.at("n").is_number_integer())
      throw Error(ErrorCode::InvalidInput, "model kind '" + kind + "' needs an integer \"n\"");
    const auto n = j.at("n").get<long long>();
    if (n < 0) throw Error(ErrorCode::DegenerateModel, "negative n");
    return static_cast<std::size_t>(n);
  };
  if (kind == "simplex") return StateSpace::simplex(count());
  if (kind == "regular_polygon") return StateSpace::regular_polygon(count());
  if (kind == "custom_polytope") {
    if (!j.contains("vertices")) throw Error(ErrorCode::InvalidInput, "custom model needs \"vertices\"");
    std::vector<Point> v;
    for (const auto& row : j.at("vertices")) v.push_back(number_array(row, "vertex"));
    return StateSpace::custom(v);
  }
  throw Error(ErrorCode::InvalidInput, "unknown model kind '" + kind + "'");
}

json model_to_json(const StateSpace& space) {
  json v = json::array();
  for (const auto& p : space.vertices()) {
    json row = json::array();
    for (std::size_t k = 0; k + 1 < p.size(); ++k) row.push_back(round12(p[k]));
    v.push_back(row);
  }
  return {{"kind", to_string(space.kind())}, {"n", space.n()}, {"vertices", v}};
}

GptState state_from_coords(const StateSpace& space, const std::vector<double>& coords) {
  if (coords.size() == space.dimension()) return space.state(coords);
  return space.state_from_raw(coords);
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::InvalidInput, "matrix must be a nonempty array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::InvalidInput, "matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row.at(static_cast<std::size_t>(c));
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = {e[0].get<double>(), e[1].get<double>()};
      } else {
        throw Error(ErrorCode::InvalidInput, "matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({round12(m(r, c).real()), round12(m(r, c).imag())});
    out.push_back(row);
  }
  return out;
}

DensityMatrix density_from_json(const json& j) {
  return DensityMatrix(matrix_from_json(j.is_object() && j.contains("rho") ? j.at("rho") : j));
}

Ensemble ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("weights") || !j.contains("states"))
    throw Error(ErrorCode::InvalidInput, "ensemble needs \"weights\" and \"states\"");
  std::vector<DensityMatrix> states;
  for (const auto& s : j.at("states")) states.push_back(density_from_json(s));
  return Ensemble(ProbVector(number_array(j.at("weights"), "weights")), std::move(states));
}

Povm povm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("effects"))
    throw Error(ErrorCode::InvalidInput, "POVM needs \"effects\"");
  std::vector<CMatrix> effects;
  for (const auto& e : j.at("effects")) effects.push_back(matrix_from_json(e));
  return Povm(std::move(effects), j.value("rank_one", false));
}

EntropicPair pair_from_json(const json& j) {
  if (j.is_string()) return parse_pair_spec(j.get<std::string>());
  if (!j.is_object() || !j.contains("h") || !j.contains("phi"))
    throw Error(ErrorCode::InvalidPair, "custom pair needs \"h\" and \"phi\" sample grids");
  std::optional<Regime> regime;
  if (j.contains("regime")) {
    const auto r = j.at("regime").get<std::string>();
    if (r == "increasing_concave")
      regime = Regime::IncreasingConcave;
    else if (r == "decreasing_convex")
      regime = Regime::DecreasingConvex;
    else
      throw Error(ErrorCode::InvalidPair, "unknown regime '" + r + "'");
  }
  return EntropicPair::sampled(sampled_map(j.at("h"), "h"), sampled_map(j.at("phi"), "phi"), regime);
}

JointState joint_from_json(const json& j) {
  const json& t = j.is_object() && j.contains("tensor") ? j.at("tensor") : j;
  if (!t.is_array() || t.empty()) throw Error(ErrorCode::InvalidInput, "joint tensor must be a nonempty array");
  std::vector<double> flat;
  const std::size_t cols = t.front().size();
  for (const auto& row : t) {
    auto r = number_array(row, "joint tensor row");
    if (r.size() != cols) throw Error(ErrorCode::InvalidInput, "joint tensor rows differ in length");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return JointState(t.size(), cols, std::move(flat));
}

json probvec_to_json(const ProbVector& p) {
  json out = json::array();
  for (double x : p) out.push_back(round12(x));
  return out;
}

double round12(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, "non-finite result");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

}  // namespace gptinfo::io
