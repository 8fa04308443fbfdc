#include <random>

#include <Eigen/Dense>

#include "gptinfo/convex.hpp"
#include "helpers.hpp"

using namespace gptinfo;

namespace {

// max c.x over {A x <= b, x >= 0} by enumerating every basic point.
std::optional<double> brute_force_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& c) {
  const auto n = A.cols(), m = A.rows();
  Eigen::MatrixXd G(m + n, n);
  Eigen::VectorXd h(m + n);
  G << A, -Eigen::MatrixXd::Identity(n, n);
  h << b, Eigen::VectorXd::Zero(n);
  std::optional<double> best;
  std::vector<int> mask(static_cast<std::size_t>(m + n), 0);
  std::fill(mask.end() - n, mask.end(), 1);
  do {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd r(n);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < m + n; ++i)
      if (mask[static_cast<std::size_t>(i)]) {
        M.row(k) = G.row(i);
        r(k++) = h(i);
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.rank() < n) continue;
    const Eigen::VectorXd x = lu.solve(r);
    if (((G * x - h).array() > 1e-9).any()) continue;
    const double v = c.dot(x);
    if (!best || v > *best) best = v;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace

TEST_CASE("small LP with known optimum") {
  LinearProgram lp(2);
  lp.objective = {3.0, 2.0};
  lp.add({1.0, 1.0}, Relation::LessEq, 4.0);
  lp.add({1.0, 3.0}, Relation::LessEq, 6.0);
  lp.add({1.0, 0.0}, Relation::LessEq, 3.0);
  const auto r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(near(r.value, 11.0));
  CHECK(near(r.point[0], 3.0));
  CHECK(near(r.point[1], 1.0));
}

TEST_CASE("minimize, equality, free and bounded variables") {
  LinearProgram lp(2);
  lp.sense = Sense::Minimize;
  lp.objective = {1.0, 1.0};
  lp.bounds[0] = VariableBounds::free();
  lp.bounds[1] = {-2.0, 5.0};
  lp.add({1.0, -1.0}, Relation::Equal, 3.0);
  lp.add({1.0, 0.0}, Relation::GreaterEq, -10.0);
  const auto r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(near(r.point[1], -2.0));
  CHECK(near(r.point[0], 1.0));
  CHECK(near(r.value, -1.0));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram inf(1);
  inf.add({1.0}, Relation::GreaterEq, 2.0);
  inf.add({1.0}, Relation::LessEq, 1.0);
  CHECK(lp_solve(inf).status == LpStatus::Infeasible);

  LinearProgram unb(2);
  unb.objective = {1.0, 0.0};
  unb.add({-1.0, 1.0}, Relation::LessEq, 1.0);
  CHECK(lp_solve(unb).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate program terminates under Bland's rule") {
  // Beale's cycling example.
  LinearProgram lp(4);
  lp.sense = Sense::Minimize;
  lp.objective = {-0.75, 150.0, -0.02, 6.0};
  lp.add({0.25, -60.0, -0.04, 9.0}, Relation::LessEq, 0.0);
  lp.add({0.5, -90.0, -0.02, 3.0}, Relation::LessEq, 0.0);
  lp.add({0.0, 0.0, 1.0, 0.0}, Relation::LessEq, 1.0);
  const auto r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(near(r.value, -0.05));
}

TEST_CASE("redundant equalities") {
  LinearProgram lp(3);
  lp.objective = {1.0, 2.0, 3.0};
  lp.add({1.0, 1.0, 1.0}, Relation::Equal, 1.0);
  lp.add({2.0, 2.0, 2.0}, Relation::Equal, 2.0);
  const auto r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(near(r.value, 3.0));
}

TEST_CASE("random LPs match vertex enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 150; ++t) {
    const Eigen::Index n = 2 + t % 3, m = 2 + t % 4;
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m), c(n);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) A(i, j) = u(rng);
      b(i) = u(rng) + 0.5;
    }
    // A bounding row keeps every instance bounded.
    A.row(0).setOnes();
    b(0) = 3.0;
    for (Eigen::Index j = 0; j < n; ++j) c(j) = u(rng);

    LinearProgram lp(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) lp.objective[static_cast<std::size_t>(j)] = c(j);
    for (Eigen::Index i = 0; i < m; ++i) {
      std::vector<double> row(static_cast<std::size_t>(n));
      for (Eigen::Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = A(i, j);
      lp.add(row, Relation::LessEq, b(i));
    }

    const auto expected = brute_force_max(A, b, c);
    const auto r = lp_solve(lp);
    if (!expected) {
      CHECK(r.status == LpStatus::Infeasible);
      continue;
    }
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(near(r.value, *expected, 1e-8));
    // Primal feasibility of the returned point.
    for (Eigen::Index i = 0; i < m; ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) s += A(i, j) * r.point[static_cast<std::size_t>(j)];
      CHECK(s <= b(i) + 1e-8);
    }
  }
}

TEST_CASE("convex weights and membership") {
  const Polytope square({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(membership({0.2, 0.3}, square));
  CHECK_FALSE(membership({0.6, 0.6}, square));
  const auto w = convex_weights({0.5, 0.0}, square);
  REQUIRE(w);
  double x = 0.0, s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    x += (*w)[i] * square[i][0];
    s += (*w)[i];
  }
  CHECK(near(x, 0.5));
  CHECK(near(s, 1.0));
  CHECK_THROWS_AS(Polytope({}), Error);
  CHECK_THROWS_AS(Polytope({{1, 0}, {1}}), Error);
}

TEST_CASE("top-k weight maximum") {
  const std::vector<Point> v{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto lp = decomposition_program(v, {0.0, 0.0});
  const std::vector<std::size_t> one{0}, two{0, 2}, adj{0, 1};
  CHECK(near(topk_weight_max(lp, one), 0.5));
  CHECK(near(topk_weight_max(lp, two), 1.0));
  CHECK(near(topk_weight_max(lp, adj), 0.5));
  const auto outside = decomposition_program(v, {2.0, 0.0});
  CHECK_ERROR_CODE(topk_weight_max(outside, one), ErrorCode::InfeasibleDecomposition);
}
