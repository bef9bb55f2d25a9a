#include <random>

#include <gtest/gtest.h>

#include "conicdual/simplex.hpp"
#include "oracles.hpp"

using namespace conicdual;

TEST(Simplex, TextbookMinimum) {
  // min −3x − 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18: optimum (2, 6), value −36.
  LinearProgram lp(2);
  lp.objective << -3, -5;
  lp.add_le(Eigen::Vector2d(1, 0), 4);
  lp.add_le(Eigen::Vector2d(0, 2), 12);
  lp.add_le(Eigen::Vector2d(3, 2), 18);
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, -36.0, 1e-12);
  EXPECT_NEAR(s.x(0), 2.0, 1e-12);
  EXPECT_NEAR(s.x(1), 6.0, 1e-12);
}

TEST(Simplex, GreaterEqualAndEquality) {
  // min x + y s.t. x + 2y ≥ 2, x − y = 0.5
  LinearProgram lp(2);
  lp.objective << 1, 1;
  lp.add_ge(Eigen::Vector2d(1, 2), 2);
  lp.add_eq(Eigen::Vector2d(1, -1), 0.5);
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x(0), 1.0, 1e-12);
  EXPECT_NEAR(s.x(1), 0.5, 1e-12);
}

TEST(Simplex, Infeasible) {
  LinearProgram lp(1);
  lp.objective << 1;
  lp.add_ge(Vector::Ones(1), 2);
  lp.add_le(Vector::Ones(1), 1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::kInfeasible);
}

TEST(Simplex, UnboundedWithRay) {
  // min −x − y s.t. x − y ≤ 1
  LinearProgram lp(2);
  lp.objective << -1, -1;
  lp.add_le(Eigen::Vector2d(1, -1), 1);
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kUnbounded);
  ASSERT_EQ(s.ray.size(), 2);
  EXPECT_GE(s.ray.minCoeff(), -1e-12);
  EXPECT_LT(lp.objective.dot(s.ray), 0.0);
  EXPECT_LE(s.ray(0) - s.ray(1), 1e-12);
}

TEST(Simplex, RedundantEqualities) {
  LinearProgram lp(3);
  lp.objective << 1, 2, 3;
  Matrix eq(3, 3);
  eq << 1, 1, 1,
        2, 2, 2,
        1, 0, -1;
  lp.add_eq(eq, Eigen::Vector3d(1, 2, 0));
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, 2.0, 1e-12);  // x = (0.5, 0, 0.5)
}

TEST(Simplex, BealeCyclingExampleTerminates) {
  // Beale's classic instance cycles under the largest-coefficient rule.
  LinearProgram lp(4);
  lp.objective << -0.75, 150, -0.02, 6;
  Matrix le(3, 4);
  le << 0.25, -60, -0.04, 9,
        0.5, -90, -0.02, 3,
        0, 0, 1, 0;
  lp.add_le(le, Eigen::Vector3d(0, 0, 1));
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, -0.05, 1e-12);
}

TEST(Simplex, MatchesVertexEnumerationIn2D) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const Matrix G = oracle::uniform_matrix(rng, 4, 2);
    const Vector q = oracle::uniform_vector(rng, 4, -1.0, 0.2);
    const Vector c = oracle::uniform_vector(rng, 2, 0.1, 1.0);  // bounded below on x ≥ 0
    LinearProgram lp(2);
    lp.objective = c;
    lp.add_ge(G, q);
    const LpSolution s = solve_lp(lp);
    Matrix all(6, 2);
    all << G, Matrix::Identity(2, 2);
    Vector qa(6);
    qa << q, 0, 0;
    const double ref = oracle::lp_vertex_min_2d(all, qa, c);
    if (std::isinf(ref)) {
      EXPECT_EQ(s.status, LpStatus::kInfeasible);
      continue;
    }
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_NEAR(s.value, ref, 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Simplex, DegenerateRandomProblemsStayFeasible) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    // Many constraints through the origin: heavy degeneracy.
    const Matrix G = oracle::uniform_matrix(rng, 8, 5);
    LinearProgram lp(5);
    lp.objective = oracle::uniform_vector(rng, 5);
    lp.add_ge(G, Vector::Zero(8));
    lp.add_le(Vector(Vector::Ones(5)), 1.0);
    const LpSolution s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_GE((G * s.x).minCoeff(), -1e-9);
    EXPECT_LE(s.x.sum(), 1.0 + 1e-9);
    EXPECT_GE(s.x.minCoeff(), -1e-12);
  }
}
