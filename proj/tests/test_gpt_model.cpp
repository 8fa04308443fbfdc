#include <set>

#include "gptinfo/gpt_model.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gptinfo;

TEST_CASE("factories") {
  const auto s = StateSpace::simplex(3);
  CHECK(s.size() == 3);
  CHECK(s.dimension() == 4);
  const auto sq = StateSpace::regular_polygon(4);
  CHECK(sq.dimension() == 3);
  CHECK(near(sq.vertices()[1][0], 0.0, 0.0));
  CHECK(near(sq.vertices()[1][1], 1.0, 0.0));
  CHECK_ERROR_CODE(StateSpace::simplex(1), ErrorCode::DegenerateModel);
  CHECK_ERROR_CODE(StateSpace::simplex(17), ErrorCode::DegenerateModel);
  CHECK_ERROR_CODE(StateSpace::regular_polygon(17), ErrorCode::DegenerateModel);
}

TEST_CASE("custom models are validated") {
  CHECK_NOTHROW(StateSpace::custom({{1, 0}, {-1, 0}, {0, 1}, {0, -2}}));
  // Duplicate vertex.
  CHECK_ERROR_CODE(StateSpace::custom({{1, 0}, {1, 0}, {0, 1}}), ErrorCode::DegenerateModel);
  // Collinear points in the plane do not span it.
  CHECK_ERROR_CODE(StateSpace::custom({{0, 0}, {1, 1}, {2, 2}}), ErrorCode::DegenerateModel);
  // Interior point is not extreme.
  CHECK_ERROR_CODE(StateSpace::custom({{1, 0}, {-1, 0}, {0, 1}, {0, 0.2}}), ErrorCode::DegenerateModel);
  CHECK_ERROR_CODE(StateSpace::custom({{1, 0}, {0, 1, 2}}), ErrorCode::DimensionMismatch);
}

TEST_CASE("states and effects") {
  const auto sq = StateSpace::regular_polygon(4);
  CHECK_NOTHROW(sq.state_from_raw({0.3, 0.3}));
  CHECK_ERROR_CODE(sq.state_from_raw({0.8, 0.8}), ErrorCode::NotAState);
  CHECK_ERROR_CODE(sq.state({0.0, 0.0, 2.0}), ErrorCode::NotAState);
  const auto e = sq.effect({0.5, 0.0, 0.5});
  CHECK(near(evaluate(e, sq.vertex_state(0)), 1.0));
  CHECK(near(evaluate(e, sq.vertex_state(2)), 0.0));
  CHECK(near(evaluate(sq.unit(), sq.state_from_raw({0.1, -0.2})), 1.0));
  CHECK_ERROR_CODE(sq.effect({1.0, 0.0, 0.5}), ErrorCode::InvalidMeasurement);
  const std::vector<double> w{0.25, 0.25, 0.25, 0.25};
  const auto c = sq.mixture(w);
  CHECK(near(c.coords()[0], 0.0));
  CHECK(near(c.coords()[2], 1.0));
}

TEST_CASE("simplex vertices are perfectly distinguishable") {
  const auto s = StateSpace::simplex(4);
  std::vector<GptState> all;
  for (std::size_t i = 0; i < 4; ++i) all.push_back(s.vertex_state(i));
  CHECK(perfectly_distinguishable(s, all));
  const auto frames = enumerate_frames(s);
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].vertices.size() == 4);
  // A mixed state is never perfectly distinguishable from a vertex it contains.
  const std::vector<double> w{0.5, 0.5, 0.0, 0.0};
  const std::vector<GptState> pair{s.vertex_state(0), s.mixture(w)};
  CHECK_FALSE(perfectly_distinguishable(s, pair));
}

TEST_CASE("polygon frames follow the normal-cone oracle") {
  for (std::size_t n = 3; n <= 9; ++n) {
    const auto space = StateSpace::regular_polygon(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::vector<GptState> st{space.vertex_state(i), space.vertex_state(j)};
        CHECK_MESSAGE(perfectly_distinguishable(space, st) == oracle::polygon_pair_distinguishable(n, i, j),
                      "n=" << n << " pair " << i << "," << j);
      }
    const auto frames = enumerate_frames(space);
    if (n == 3) {
      REQUIRE(frames.size() == 1);
      CHECK(frames[0].vertices.size() == 3);
      continue;
    }
    std::size_t expected = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) expected += oracle::polygon_pair_distinguishable(n, i, j);
    CHECK(frames.size() == expected);
    for (const auto& f : frames) CHECK(f.vertices.size() == 2);
  }
}

TEST_CASE("square frames include adjacent pairs") {
  const auto frames = enumerate_frames(StateSpace::regular_polygon(4));
  REQUIRE(frames.size() == 6);
  CHECK(frames[0].vertices == std::vector<std::size_t>{0, 1});
  CHECK(frames[1].vertices == std::vector<std::size_t>{0, 2});
}

TEST_CASE("pentagon frames are the diagonals") {
  const auto frames = enumerate_frames(StateSpace::regular_polygon(5));
  REQUIRE(frames.size() == 5);
  for (const auto& f : frames) {
    const auto d = f.vertices[1] - f.vertices[0];
    CHECK((d == 2 || d == 3));
  }
}

TEST_CASE("frame witnesses are valid measurements") {
  for (const auto& space : {StateSpace::regular_polygon(4), StateSpace::regular_polygon(6),
                            StateSpace::simplex(3), StateSpace::custom({{1, 0}, {-1, 0}, {0, 1}, {0, -2}})}) {
    for (const auto& f : enumerate_frames(space)) {
      for (std::size_t i = 0; i < f.vertices.size(); ++i)
        for (std::size_t j = 0; j < f.vertices.size(); ++j)
          CHECK(near(f.effects[i](space.vertices()[f.vertices[j]]), i == j ? 1.0 : 0.0, 1e-8));
      for (const auto& v : space.vertices()) {
        double s = 0.0;
        for (const auto& e : f.effects) {
          CHECK(e(v) >= -1e-8);
          s += e(v);
        }
        CHECK(near(s, 1.0, 1e-8));
      }
    }
  }
}

TEST_CASE("frame restriction") {
  const auto sq = StateSpace::regular_polygon(4);
  const auto frames = enumerate_frames(sq);
  const auto p = restrict_to_frame(sq.state_from_raw({0.5, 0.0}), frames[1]);
  CHECK(near(p[0], 0.75));
  CHECK(near(p[1], 0.25));
}

TEST_CASE("effect polytope vertices and generators") {
  const auto sq = StateSpace::regular_polygon(4);
  const auto verts = effect_polytope_vertices(sq);
  CHECK(verts.size() == 6);  // 0, u and the four adjacent-pair effects
  CHECK(effect_generators_complete(sq));
  CHECK(effect_generators_complete(StateSpace::regular_polygon(5)));
  CHECK(effect_generators_complete(StateSpace::simplex(3)));
  CHECK(effect_generators_complete(StateSpace::custom({{1, 0}, {-1, 0}, {0, 1}, {0, -2}})));
  // Triangle effect polytope is the unit cube: 8 vertices.
  CHECK(effect_polytope_vertices(StateSpace::simplex(3)).size() == 8);
  const auto ext = extreme_effects(sq);
  CHECK(ext.size() == 6);
  // Pentagon: every facet functional shows up as an extreme frame witness.
  const auto pent = StateSpace::regular_polygon(5);
  int facets = 0;
  for (const auto& e : extreme_effects(pent)) {
    int zeros = 0;
    for (const auto& v : pent.vertices()) zeros += near(e(v), 0.0, 1e-9);
    facets += zeros == 2;
  }
  CHECK(facets == 5);
}
