#include <cmath>
#include <numbers>
#include <random>

#include "gptinfo/entropic.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gptinfo;

TEST_CASE("preset closed forms") {
  const ProbVector p({0.5, 0.25, 0.125, 0.125});
  CHECK(near(classical_entropy(EntropicPair::shannon(), p), 1.75 * std::numbers::ln2, 1e-12));
  CHECK(near(classical_entropy(EntropicPair::renyi(2.0), p), -std::log(0.34375), 1e-12));
  CHECK(near(classical_entropy(EntropicPair::tsallis(2.0), p), 1.0 - 0.34375, 1e-12));
  CHECK(near(classical_entropy(EntropicPair::shannon(), uniform(2)), std::numbers::ln2, 1e-12));
}

TEST_CASE("presets against independent formulas on random vectors") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto v = oracle::random_simplex_point(1 + t % 8, rng);
    const ProbVector p(v);
    CHECK(near(classical_entropy(EntropicPair::shannon(), p), oracle::shannon(v), 1e-10));
    for (double a : {0.3, 0.5, 2.0, 3.7}) {
      CHECK(near(classical_entropy(EntropicPair::renyi(a), p), oracle::renyi(v, a), 1e-10));
      CHECK(near(classical_entropy(EntropicPair::tsallis(a), p), oracle::tsallis(v, a), 1e-10));
    }
  }
}

TEST_CASE("point mass has zero entropy and uniform attains the bound") {
  for (const auto& h : {EntropicPair::shannon(), EntropicPair::renyi(0.5), EntropicPair::tsallis(3.0)}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      CHECK(classical_entropy(h, point_mass(n)) == 0.0);
      CHECK(near(classical_entropy(h, uniform(n)), entropy_upper_bound(h, n), 1e-12));
    }
  }
}

TEST_CASE("regime detection") {
  CHECK(EntropicPair::shannon().regime() == Regime::IncreasingConcave);
  CHECK(EntropicPair::renyi(0.5).regime() == Regime::IncreasingConcave);
  CHECK(EntropicPair::renyi(2.0).regime() == Regime::DecreasingConvex);
  CHECK(EntropicPair::tsallis(0.5).regime() == Regime::IncreasingConcave);
  CHECK(EntropicPair::tsallis(2.0).regime() == Regime::DecreasingConvex);
}

TEST_CASE("bad preset parameters") {
  CHECK_ERROR_CODE(EntropicPair::renyi(1.0), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(EntropicPair::renyi(0.0), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(EntropicPair::tsallis(-2.0), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(EntropicPair::tsallis(std::nan("")), ErrorCode::BadParameter);
  CHECK_ERROR_CODE(make_preset(PresetKind::Renyi, 1.0), ErrorCode::BadParameter);
}

TEST_CASE("pair spec parsing") {
  CHECK(parse_pair_spec("shannon").preset()->kind == PresetKind::Shannon);
  const auto r = parse_pair_spec("renyi:2.5");
  CHECK(r.preset()->kind == PresetKind::Renyi);
  CHECK(r.preset()->parameter == 2.5);
  CHECK(parse_pair_spec("tsallis:0.5").name() == "tsallis:0.5");
  CHECK_THROWS_AS(parse_pair_spec("boltzmann"), Error);
  CHECK_THROWS_AS(parse_pair_spec("renyi:"), Error);
  CHECK_THROWS_AS(parse_pair_spec("renyi:abc"), Error);
}

TEST_CASE("custom pairs are validated") {
  // phi(0) != 0.
  CHECK_ERROR_CODE(EntropicPair([](double x) { return x; }, [](double p) { return p + 0.1; }),
                   ErrorCode::InvalidPair);
  // h(phi(1)) != 0.
  CHECK_ERROR_CODE(EntropicPair([](double x) { return x + 1.0; }, [](double p) { return p * (1.0 - p); }),
                   ErrorCode::InvalidPair);
  // phi neither concave nor convex.
  CHECK_ERROR_CODE(EntropicPair([](double x) { return x; },
                                [](double p) { return std::sin(6.0 * p) * p * (1.0 - p); }),
                   ErrorCode::InvalidPair);
  // Valid shape, wrong declared regime.
  CHECK_ERROR_CODE(EntropicPair([](double x) { return x; }, [](double p) { return p * (1.0 - p); },
                                Regime::DecreasingConvex),
                   ErrorCode::InvalidPair);
  // Gini-Simpson as an (h, phi) pair.
  const EntropicPair gini([](double x) { return x; }, [](double p) { return p * (1.0 - p); });
  CHECK(gini.regime() == Regime::IncreasingConcave);
  CHECK(near(classical_entropy(gini, uniform(4)), 0.75));
}

TEST_CASE("sampled pairs") {
  std::vector<double> x, hy, py;
  for (int i = 0; i <= 200; ++i) {
    const double t = i / 200.0;
    x.push_back(t);
    py.push_back(t * (1.0 - t));
  }
  const SampledMap h({0.0, 1.0}, {0.0, 1.0});
  const SampledMap phi(x, py);
  const auto pair = EntropicPair::sampled(h, phi);
  CHECK(near(classical_entropy(pair, uniform(2)), 0.5, 1e-9));
  CHECK(near(h(3.0), 3.0));
  CHECK_THROWS_AS(SampledMap({0.0, 0.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(SampledMap({0.0, 1.0}, {1.0}), Error);
}

TEST_CASE("Schur concavity on Robin Hood pairs") {
  std::mt19937_64 rng(5);
  const std::vector<EntropicPair> pairs{EntropicPair::shannon(), EntropicPair::renyi(0.5),
                                        EntropicPair::renyi(2.0), EntropicPair::tsallis(0.7),
                                        EntropicPair::tsallis(2.5)};
  for (int t = 0; t < 300; ++t) {
    const auto [p, q] = oracle::robin_hood_pair(2 + t % 7, rng);
    for (const auto& h : pairs)
      CHECK(classical_entropy(h, ProbVector(p)) >= classical_entropy(h, ProbVector(q)) - 1e-9);
  }
}
