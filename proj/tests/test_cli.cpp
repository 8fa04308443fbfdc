#include <sstream>

#include <json.hpp>

#include "gptinfo/cli.hpp"
#include "gptinfo/io.hpp"
#include "helpers.hpp"

using namespace gptinfo;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(GPTINFO_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("io helpers") {
  CHECK(io::parse_number_list("0.5, 0.25,0.25") == std::vector<double>{0.5, 0.25, 0.25});
  CHECK_ERROR_CODE(io::parse_number_list("0.5,x"), ErrorCode::InvalidInput);
  CHECK_ERROR_CODE(io::parse_number_list(""), ErrorCode::InvalidInput);
  CHECK(io::round12(0.1234567890123456) == 0.123456789012);
  CHECK(io::round12(-0.0) == 0.0);
  CHECK_THROWS_AS(io::round12(std::numeric_limits<double>::quiet_NaN()), Error);
  const auto sq = io::model_from_json(json{{"kind", "regular_polygon"}, {"n", 4}});
  CHECK(sq.size() == 4);
  CHECK(io::model_from_json(io::model_to_json(sq)).vertices() == sq.vertices());
  CHECK_ERROR_CODE(io::model_from_json(json{{"kind", "sphere"}}), ErrorCode::InvalidInput);
  const auto m = io::matrix_from_json(json::parse("[[[0.5,0],[0,-0.5]],[[0,0.5],[0.5,0]]]"));
  CHECK(m(0, 1) == std::complex<double>(0.0, -0.5));
  const auto pair = io::pair_from_json(json::parse(
      R"({"h": {"x": [0, 1], "y": [0, 1]}, "phi": {"x": [0, 0.5, 1], "y": [0, 0.25, 0]}})"));
  CHECK(pair.regime() == Regime::IncreasingConcave);
}

TEST_CASE("entropy subcommand") {
  const auto r = call({"entropy", "--pair", "shannon", "--p", "0.5,0.5"});
  REQUIRE(r.code == 0);
  CHECK(near(r.doc()["value"].get<double>(), 0.693147180560, 1e-12));
  const auto bits = call({"entropy", "--p", "0.5,0.5", "--bits"});
  CHECK(bits.doc()["value"].get<double>() == 1.0);
  CHECK(bits.doc()["units"] == "bits");
}

TEST_CASE("spectrum subcommand") {
  const auto r = call({"spectrum", "--model", data("square.json"), "--state", "0,0"});
  REQUIRE(r.code == 0);
  CHECK(r.doc()["exists"] == true);
  CHECK(r.doc()["weights"] == json::array({0.5, 0.5}));
  const auto q = call({"spectrum", "--model", data("quadrilateral.json"), "--state", "0,0"});
  CHECK(q.doc()["weights"][0].get<double>() == 0.666666666667);
}

TEST_CASE("holevo subcommand") {
  const auto r = call({"holevo", "--ensemble", data("zero_plus.json")});
  REQUIRE(r.code == 0);
  const auto d = r.doc();
  CHECK(near(d["chi"].get<double>(), 0.416495530700, 1e-12));
  CHECK(near(d["hx"].get<double>(), 0.693147180560, 1e-12));
  CHECK(d["strict_gap"] == true);
}

TEST_CASE("frames, separable and majorize subcommands") {
  const auto f = call({"frames", "--model", data("square.json")});
  CHECK(f.doc()["count"] == 6);
  const auto s = call({"separable", "--model", data("square.json"), "--model-b", data("square.json"),
                       "--joint", data("pr_box.json")});
  REQUIRE(s.code == 0);
  CHECK(s.doc()["separable"] == false);
  CHECK(s.doc()["classification"] == "entangled");
  CHECK(s.doc().contains("violation"));
  const auto m = call({"majorize", "--p", "0.5,0.5", "--q", "1,0"});
  CHECK(m.doc()["majorized"] == true);
  const auto g = call({"majorize", "--model", data("square.json"), "--state", "0,0", "--other", "1,0"});
  CHECK(g.doc()["majorized"] == true);
}

TEST_CASE("qentropy subcommand") {
  const auto r = call({"qentropy", "--rho", data("qubit_mixed.json"), "--search", "--budget", "60", "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto d = r.doc();
  CHECK(d["search"]["value"].get<double>() >= d["value"].get<double>() - 1e-9);
}

TEST_CASE("sweep emits one row per grid point") {
  const auto r = call({"sweep", "--family", "renyi", "--from", "0.5", "--to", "3", "--steps", "11", "--p", "0.5,0.3,0.2"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "parameter,value");
  CHECK(rows[4].rfind("1.25,", 0) == 0);
  CHECK(r.out.find('\r') == std::string::npos);
  // Parameter 1 falls back to the Shannon limit.
  const auto s = call({"sweep", "--from", "1", "--to", "1", "--steps", "1", "--p", "0.5,0.5"});
  CHECK(s.out == "parameter,value\n1,0.69314718056\n");
}

TEST_CASE("undefined spectrum exits 3 only under --strict") {
  const std::vector<std::string> base{"spectrum", "--model", data("quadrilateral.json"), "--state", "-0.32,0.19"};
  const auto lax = call(base);
  REQUIRE(lax.code == 0);
  CHECK(lax.doc()["exists"] == false);
  CHECK(lax.doc()["best_candidate"].size() == 4);
  auto strict_args = base;
  strict_args.push_back("--strict");
  const auto strict = call(strict_args);
  CHECK(strict.code == 3);
  CHECK(strict.doc()["exists"] == false);
  const auto gen = call({"entropy", "--general", "--model", data("quadrilateral.json"), "--state", "-0.32,0.19", "--strict"});
  CHECK(gen.code == 3);
  CHECK(gen.doc()["spectral_entropy"].is_null());
  const auto maj = call({"majorize", "--model", data("quadrilateral.json"), "--state", "-0.32,0.19", "--other", "0,0", "--strict"});
  CHECK(maj.code == 3);
  CHECK(maj.doc()["majorized"].is_null());
  const auto sweep = call({"sweep", "--model", data("quadrilateral.json"), "--state", "-0.32,0.19", "--steps", "2"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find(",\n") != std::string::npos);  // empty spectral cell
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  const auto unknown = call({"unknown"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown") != std::string::npos);
  const auto missing = call({"entropy"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--p") != std::string::npos);
  CHECK(call({"entropy", "--p", "0.5,0.6"}).code == 2);
  CHECK(call({"entropy", "--p", "1", "--pair", "renyi:1"}).code == 2);
  CHECK(call({"spectrum", "--model", data("square.json"), "--state", "2,0"}).code == 2);
  CHECK(call({"spectrum", "--model", data("missing.json"), "--state", "0,0"}).code == 2);
  CHECK(call({"sweep", "--family", "gini", "--p", "1"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("repeated invocations are byte-identical") {
  const std::vector<std::string> args{"qentropy", "--rho", data("qubit_mixed.json"), "--search", "--budget", "40", "--seed", "9"};
  const auto first = call(args).out;
  for (int i = 0; i < 3; ++i) CHECK(call(args).out == first);
}
