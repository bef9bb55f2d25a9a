#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "conicdual/continuous_lp.hpp"
#include "oracles.hpp"

using namespace conicdual;

namespace {

MatrixFn const_matrix(Matrix v) {
  return [v](double) { return v; };
}
VectorFn const_vector(Vector v) {
  return [v](double) { return v; };
}
KernelFn causal_kernel(Matrix v) {
  return [v](double s, double t) { return s <= t ? v : Matrix(Matrix::Zero(v.rows(), v.cols())); };
}

ContinuousLPSpec scalar_spec(double B, double K, double b, double c, int n_grid) {
  ContinuousLPSpec s;
  s.n_grid = n_grid;
  s.B = const_matrix(Matrix::Constant(1, 1, B));
  s.K = causal_kernel(Matrix::Constant(1, 1, K));
  s.b = const_vector(Vector::Constant(1, b));
  s.c = const_vector(Vector::Constant(1, c));
  return s;
}

// m = 2, n = 3, smooth time-varying B and causal K.
ContinuousLPSpec smooth_spec(int n_grid) {
  ContinuousLPSpec s;
  s.m = 2;
  s.n = 3;
  s.n_grid = n_grid;
  s.B = [](double t) {
    Matrix b(2, 3);
    b << 1 + t, std::sin(t), -0.5, 0.3 * t * t, 2 - t, std::cos(3 * t);
    return b;
  };
  s.K = [](double u, double t) {
    Matrix k = Matrix::Zero(2, 3);
    if (u > t) return k;
    k << std::exp(-(t - u)), u * t, 0.2, -0.4, std::cos(u + t), 1.0;
    return k;
  };
  s.b = [](double t) { return Vector(Eigen::Vector3d(1, t, 0.5)); };
  s.c = [](double t) { return Vector(Eigen::Vector2d(1 + t, 1)); };
  return s;
}

double naive_mismatch(int n_grid) {
  const ContinuousLPSpec s = scalar_spec(1.0, 1.0, 1.0, 1.0, n_grid);
  const ConicProblem pb = discretize_clp(s);
  AdjointCheckOptions opt;
  opt.n_samples = 200;
  opt.smooth_block = 1;
  return adjoint_identity_check(pb.A, naive_adjoint_matrix(s), pb.pairing_X, pb.pairing_Y, opt)
      .max_residual;
}

}  // namespace

TEST(DiscretizeClp, SeparableInstance) {
  const ConicProblem pb = discretize_clp(scalar_spec(1.0, 0.0, 1.0, 1.0, 4));
  EXPECT_EQ(pb.A.matrix, Matrix(Matrix::Identity(4, 4)));
  const auto r = solve(pb);
  EXPECT_NEAR(r.v_primal, 1.0, 1e-12);
  EXPECT_NEAR(r.v_dual, 1.0, 1e-12);
}

TEST(DiscretizeClp, HandAssembledConstantKernel) {
  const double kappa = 0.7;
  const ConicProblem pb = discretize_clp(scalar_spec(1.0, kappa, 1.0, 1.0, 4));
  EXPECT_LE((pb.A.matrix - oracle::clp_constant_kernel_matrix(4, 0.25, kappa)).norm(), 1e-15);
  EXPECT_EQ(pb.pairing_X.gram_diagonal(4), Vector(Vector::Constant(4, 0.25)));
}

TEST(DiscretizeClp, GridIsMidpoint) {
  const Grid g = make_grid(scalar_spec(1.0, 0.0, 1.0, 1.0, 4));
  EXPECT_EQ(g.h, 0.25);
  EXPECT_EQ(g.nodes, (std::vector<double>{0.125, 0.375, 0.625, 0.875}));
}

TEST(DiscretizeClp, ExactDiscreteFubini) {
  for (int n : {16, 64}) {
    const ConicProblem pb = discretize_clp(smooth_spec(n));
    EXPECT_EQ(pb.A.rows(), 3 * n);
    EXPECT_EQ(pb.A.cols(), 2 * n);
    const auto rep = adjoint_identity_check(pb.A, pb.pairing_X, pb.pairing_Y, AdjointCheckOptions{});
    EXPECT_TRUE(rep.passed) << n;
    EXPECT_LE(rep.max_residual, 1e-12) << n;
  }
}

TEST(DiscretizeClp, AdjointMatchesDualFormula) {
  // (A_hᵀ y)_k = B(t_k) y_k − h Σ_{j<k} K(t_j, t_k) y_j, evaluated directly.
  const ContinuousLPSpec s = smooth_spec(8);
  const ConicProblem pb = discretize_clp(s);
  const Grid g = make_grid(s);
  std::mt19937_64 rng(91);
  const Vector y = oracle::uniform_vector(rng, 3 * 8);
  const Vector got = adjoint_apply(pb.A, y, pb.pairing_X, pb.pairing_Y);
  for (int k = 0; k < 8; ++k) {
    Vector expect = s.B(g.nodes[k]) * y.segment(3 * k, 3);
    for (int j = 0; j < k; ++j) expect -= g.h * s.K(g.nodes[j], g.nodes[k]) * y.segment(3 * j, 3);
    EXPECT_LE((got.segment(2 * k, 2) - expect).norm(), 1e-12) << k;
  }
}

TEST(DiscretizeClp, NaiveAdjointIsFirstOrder) {
  const double r64 = naive_mismatch(64), r128 = naive_mismatch(128);
  EXPECT_LE(r64, 0.1);
  EXPECT_GT(r64, 1e-6);
  EXPECT_NEAR(r128 / r64, 0.5, 0.1);
}

TEST(DiscretizeClp, CausalityIsEnforced) {
  auto s = scalar_spec(1.0, 0.0, 1.0, 1.0, 8);
  s.K = [](double, double) { return Matrix::Constant(1, 1, 1.0); };
  try {
    discretize_clp(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("kernel causality"), std::string::npos);
  }
  // Nonzero only strictly between grid nodes is still caught.
  s.K = [](double u, double t) { return Matrix::Constant(1, 1, u > t && u < t + 0.07 ? 1.0 : 0.0); };
  EXPECT_THROW(discretize_clp(s), Error);
}

TEST(DiscretizeClp, RejectsBadCallbacks) {
  auto s = scalar_spec(1.0, 0.0, 1.0, 1.0, 8);
  s.b = [](double t) { return Vector::Constant(1, t > 0.5 ? std::nan("") : 1.0); };
  EXPECT_THROW(discretize_clp(s), Error);
  s = scalar_spec(1.0, 0.0, 1.0, 1.0, 8);
  s.B = [](double) { return Matrix::Ones(2, 1); };
  EXPECT_THROW(discretize_clp(s), Error);
  s = scalar_spec(1.0, 0.0, 1.0, 1.0, 1);
  EXPECT_THROW(discretize_clp(s), Error);
}

TEST(SignConditions, Examples) {
  EXPECT_EQ(theorem_5_2_conditions(scalar_spec(-1.0, 1.0, 1.0, 1.0, 8)), ClpCondition::kConditionI);
  EXPECT_EQ(theorem_5_2_conditions(scalar_spec(1.0, -1.0, 1.0, -1.0, 8)),
            ClpCondition::kConditionII);
  EXPECT_EQ(theorem_5_2_conditions(scalar_spec(1.0, 1.0, 1.0, 1.0, 8)), ClpCondition::kNeither);
  EXPECT_EQ(to_string(ClpCondition::kConditionI), "condition_i");
}

TEST(NodeStructure, Examples) {
  EXPECT_TRUE(check_5_1_5_2(scalar_spec(1.0, 0.0, 1.0, 1.0, 4)).null_intersection);
  const auto zero = check_5_1_5_2(scalar_spec(0.0, 0.0, 1.0, 1.0, 4));
  EXPECT_FALSE(zero.null_intersection);
  EXPECT_EQ(zero.null_intersection_failures.size(), 4u);

  ContinuousLPSpec s;
  s.m = 1;
  s.n = 2;
  s.n_grid = 4;
  Matrix row(1, 2);
  row << 1, -1;
  s.B = const_matrix(row);
  s.K = causal_kernel(Matrix::Zero(1, 2));
  s.b = const_vector(Vector::Ones(2));
  s.c = const_vector(Vector::Ones(1));
  const auto r = check_5_1_5_2(s);
  EXPECT_FALSE(r.null_intersection);
  // z = (1, 1) is the witness.
  EXPECT_LE((row * Eigen::Vector2d(1, 1))(0), 0.0);
  EXPECT_FALSE(r.signs_nonnegative);
}

TEST(SignConditionPipeline, DegenerateInstanceIsReported) {
  // B = K = b = 0, c = 1: condition (i) holds, x̂ = ŷ = 1 are strictly
  // positive and feasible, yet A_hᵀ y = c has no solution.
  const auto s = scalar_spec(0.0, 0.0, 0.0, 1.0, 8);
  ASSERT_EQ(theorem_5_2_conditions(s), ClpCondition::kConditionI);
  const VectorFn one = const_vector(Vector::Ones(1));
  try {
    run_theorem_5_2(s, one, one);
    FAIL() << "expected a theorem violation";
  } catch (const TheoremViolation& e) {
    EXPECT_TRUE(e.report().preconditions_met);
    EXPECT_TRUE(e.report().flags.systems_solved.first);
    EXPECT_NE(std::string(e.what()).find("worst node"), std::string::npos);
  }
}

TEST(SignConditionPipeline, NeitherConditionIsVacuous) {
  const auto s = scalar_spec(1.0, 1.0, 1.0, 1.0, 8);
  const VectorFn one = const_vector(Vector::Ones(1));
  const auto r = run_theorem_5_2(s, one, one);
  EXPECT_FALSE(r.solve.preconditions_met);
  EXPECT_EQ(r.condition, ClpCondition::kNeither);
}

TEST(SignConditionPipeline, ConditionIValuesVanish) {
  // Under (i), A_h maps x ≥ 0 into the nonpositive orthant, so A_h x ≥ b ≥ 0
  // forces b = 0 and the value is 0 at every n for c ≥ 0.
  for (int n : {8, 16, 32}) {
    const auto r = solve(discretize_clp(scalar_spec(-1.0, 1.0, 0.0, 1.0, n)));
    EXPECT_EQ(r.v_primal, 0.0) << n;
    EXPECT_EQ(r.v_dual, 0.0) << n;
    EXPECT_EQ(solve(discretize_clp(scalar_spec(-1.0, 1.0, 0.5, 1.0, n))).v_primal,
              std::numeric_limits<double>::infinity());
  }
}

TEST(ContinuousConvergence, FirstOrderOnGrowthInstance) {
  // x(t) − ∫_t^1 x ≥ 1: tight solution e^{1−t}, value e − 1. The discrete
  // optimum is (1 + h)^N − 1.
  std::vector<double> v;
  for (int n : {64, 128, 256}) {
    const auto r = solve(discretize_clp(scalar_spec(1.0, 1.0, 1.0, 1.0, n)));
    const double h = 1.0 / n;
    EXPECT_NEAR(r.v_primal, std::pow(1.0 + h, n) - 1.0, 1e-9) << n;
    EXPECT_LE(std::abs(*r.gap), 1e-6) << n;
    v.push_back(r.v_primal);
  }
  const double ratio = (v[2] - v[1]) / (v[1] - v[0]);
  EXPECT_GE(ratio, 0.3);
  EXPECT_LE(ratio, 0.7);
  EXPECT_NEAR(v[2], std::exp(1.0) - 1.0, 0.01);
}
