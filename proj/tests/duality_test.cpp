#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "conicdual/duality.hpp"
#include "oracles.hpp"

using namespace conicdual;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ConicProblem identity_problem(const Vector& b, const Vector& c) {
  return ConicProblem(Operator(Matrix::Identity(2, 2)), b, c, Cone::orthant(2), Cone::orthant(2));
}

Cone random_cone(std::mt19937_64& rng, Eigen::Index& dim) {
  if (rng() % 2) {
    std::uniform_real_distribution<double> ang(0.2, 1.3);
    const int k = 1 + static_cast<int>(rng() % 2);
    std::vector<double> alphas;
    for (int i = 0; i < k; ++i) alphas.push_back(ang(rng));
    dim = 2 * k;
    return Cone::wedge(alphas);
  }
  dim = 2 + static_cast<Eigen::Index>(rng() % 3);
  return Cone::orthant(dim);
}

ConicProblem random_problem(std::mt19937_64& rng) {
  Eigen::Index n = 0, m = 0;
  Cone S = random_cone(rng, n);
  Cone T = random_cone(rng, m);
  return ConicProblem(Operator(oracle::uniform_matrix(rng, m, n)), oracle::uniform_vector(rng, m),
                      oracle::uniform_vector(rng, n), std::move(S), std::move(T));
}

// Feasible pair with both optima at (x0, y0), strictly inside both orthants.
ConicProblem interior_problem(std::mt19937_64& rng, Vector& x0, Vector& y0) {
  const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 3);
  const Matrix A = oracle::uniform_matrix(rng, n, n) + 2.0 * Matrix::Identity(n, n);
  x0 = oracle::uniform_vector(rng, n, 0.1, 1.0);
  y0 = oracle::uniform_vector(rng, n, 0.1, 1.0);
  return ConicProblem(Operator(A), A * x0, A.transpose() * y0, Cone::orthant(n), Cone::orthant(n));
}

bool has_note(const SolveReport& r, const std::string& note) {
  return std::find(r.notes.begin(), r.notes.end(), note) != r.notes.end();
}

}  // namespace

TEST(Feasibility, Examples) {
  const auto pb = identity_problem(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1));
  EXPECT_TRUE(feasible_primal(pb, Eigen::Vector2d(2, 2)));
  EXPECT_FALSE(feasible_primal(pb, Eigen::Vector2d(0, 0)));
  EXPECT_TRUE(feasible_dual(pb, Eigen::Vector2d(1, 1)));
  EXPECT_FALSE(feasible_dual(pb, Eigen::Vector2d(2, 2)));
  EXPECT_TRUE(feasible_dual(pb, Eigen::Vector2d(0, 0)));

  const auto zero_b = identity_problem(Vector::Zero(2), Eigen::Vector2d(1, 1));
  EXPECT_TRUE(feasible_primal(zero_b, Vector::Zero(2)));
}

TEST(Feasibility, DimensionMismatchThrows) {
  const auto pb = identity_problem(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1));
  EXPECT_THROW(feasible_primal(pb, Vector::Zero(3)), Error);
  EXPECT_THROW(feasible_dual(pb, Vector::Zero(1)), Error);
}

TEST(Validate, RejectsBadProblems) {
  ConicProblem bad_dim(Operator(Matrix::Identity(2, 2)), Vector::Ones(3), Vector::Ones(2),
                       Cone::orthant(2), Cone::orthant(2));
  EXPECT_THROW(bad_dim.validate(), Error);
  Vector nan_c = Vector::Ones(2);
  nan_c(1) = std::nan("");
  ConicProblem bad_val(Operator(Matrix::Identity(2, 2)), Vector::Ones(2), nan_c, Cone::orthant(2),
                       Cone::orthant(2));
  EXPECT_THROW(bad_val.validate(), Error);
  ConicProblem flat(Operator(Matrix::Identity(2, 2)), Vector::Ones(2), Vector::Ones(2),
                    Cone::generated(Matrix(Eigen::Vector2d(1, 1))), Cone::orthant(2));
  try {
    flat.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kF1Violated);
  }
}

TEST(Solve, IdentityInstanceMatchesVertexOracle) {
  const auto pb = identity_problem(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1));
  const auto r = solve(pb);
  EXPECT_NEAR(r.v_primal, 2.0, 1e-12);
  EXPECT_NEAR(r.v_dual, 2.0, 1e-12);
  ASSERT_TRUE(r.gap);
  EXPECT_NEAR(*r.gap, 0.0, 1e-12);
  EXPECT_LE((*r.x_star - Eigen::Vector2d(1, 1)).norm(), 1e-12);
  EXPECT_LE((*r.y_star - Eigen::Vector2d(1, 1)).norm(), 1e-12);
  EXPECT_TRUE(r.flags.primal_interior_opt);
  EXPECT_TRUE(r.flags.dual_interior_opt);
  // (P): min x₁+x₂ over {x ≥ (1,1)}, vertices enumerated by the oracle.
  Matrix g(4, 2);
  g << Matrix::Identity(2, 2), Matrix::Identity(2, 2);
  Vector q(4);
  q << 1, 1, 0, 0;
  EXPECT_NEAR(oracle::lp_vertex_min_2d(g, q, Eigen::Vector2d(1, 1)), 2.0, 1e-12);
}

TEST(Solve, RandomTwoDimensionalAgainstVertexOracle) {
  std::mt19937_64 rng(71);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const Matrix A = oracle::uniform_matrix(rng, 2, 2);
    const Vector b = oracle::uniform_vector(rng, 2);
    const Vector c = oracle::uniform_vector(rng, 2, 0.1, 1.0);
    ConicProblem pb(Operator(A), b, c, Cone::orthant(2), Cone::orthant(2));
    const auto r = solve(pb);
    Matrix g(4, 2);
    g << A, Matrix::Identity(2, 2);
    Vector q(4);
    q << b, 0.0, 0.0;
    const double oracle_value = oracle::lp_vertex_min_2d(g, q, c);
    if (!std::isfinite(oracle_value)) {
      EXPECT_EQ(r.v_primal, kInf);
      continue;
    }
    EXPECT_NEAR(r.v_primal, oracle_value, 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Solve, InfeasiblePrimal) {
  ConicProblem pb(Operator(Matrix::Zero(2, 2)), Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1),
                  Cone::orthant(2), Cone::orthant(2));
  const auto r = solve(pb);
  EXPECT_EQ(r.primal_status, LpStatus::kInfeasible);
  EXPECT_EQ(r.v_primal, kInf);
  EXPECT_FALSE(r.x_star);
  EXPECT_FALSE(r.gap);
}

TEST(Solve, UnboundedDualAlongExplicitRay) {
  // c = 0, A = −I: every y ≥ 0 is dual feasible and d = (1, 0) improves ⟨y, b⟩.
  ConicProblem pb(Operator(-Matrix::Identity(2, 2)), Eigen::Vector2d(1, 0), Vector::Zero(2),
                  Cone::orthant(2), Cone::orthant(2));
  const Vector d = Eigen::Vector2d(1, 0);
  for (double s : {1.0, 10.0, 1e3}) {
    EXPECT_TRUE(feasible_dual(pb, Vector(s * d)));
  }
  EXPECT_GT(d.dot(pb.b), 0.0);
  const auto r = solve(pb);
  EXPECT_EQ(r.dual_status, LpStatus::kUnbounded);
  EXPECT_EQ(r.v_dual, kInf);
  EXPECT_EQ(r.v_primal, kInf);
}

TEST(Complementarity, Examples) {
  const auto zero = identity_problem(Vector::Zero(2), Eigen::Vector2d(1, 1));
  const auto z = complementarity(zero, Vector::Zero(2), Vector::Zero(2));
  EXPECT_EQ(z.first, 0.0);
  EXPECT_EQ(z.second, 0.0);

  const auto pb = identity_problem(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1));
  const auto r = solve(pb);
  ASSERT_TRUE(r.comp_residuals);
  EXPECT_LE(std::abs(r.comp_residuals->first), 1e-9);
  EXPECT_LE(std::abs(r.comp_residuals->second), 1e-9);

  // x = (2,2), y = 0: gap 4 − 0 splits as ⟨y, Ax − b⟩ = 0 and ⟨c − Aᵀy, x⟩ = 4.
  const auto cr = complementarity(pb, Eigen::Vector2d(2, 2), Vector::Zero(2));
  EXPECT_EQ(cr.first, 0.0);
  EXPECT_EQ(cr.second, 4.0);
}

TEST(InteriorOptimumPipeline, InteriorIdentityInstance) {
  const auto pb = identity_problem(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1));
  const auto r = verify_theorem_2_1(pb);
  EXPECT_TRUE(r.preconditions_met);
  EXPECT_TRUE(r.flags.systems_solved.first);
  EXPECT_TRUE(r.flags.systems_solved.second);
  ASSERT_TRUE(r.gap);
  EXPECT_LE(std::abs(*r.gap), 1e-8);
}

TEST(InteriorOptimumPipeline, BoundaryDualOptimumIsVacuous) {
  // c = (1, 0) pins y₂ = 0 at every dual optimum.
  const auto pb = identity_problem(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 0));
  SolveReport r;
  ASSERT_NO_THROW(r = verify_theorem_2_1(pb));
  EXPECT_FALSE(r.preconditions_met);
  EXPECT_FALSE(r.flags.dual_interior_opt);
  EXPECT_TRUE(has_note(r, "precondition not met"));
}

TEST(InteriorOptimumPipeline, RandomInteriorInstances) {
  std::mt19937_64 rng(72);
  int both_interior = 0;
  for (int t = 0; t < 200; ++t) {
    Vector x0, y0;
    const auto pb = interior_problem(rng, x0, y0);
    SolveReport r;
    ASSERT_NO_THROW(r = verify_theorem_2_1(pb)) << t;
    EXPECT_NEAR(r.v_primal, pb.c.dot(x0), 1e-9);
    if (r.flags.primal_interior_opt && r.flags.dual_interior_opt) {
      ++both_interior;
      EXPECT_TRUE(r.flags.systems_solved.first);
      EXPECT_TRUE(r.flags.systems_solved.second);
      EXPECT_LE(std::abs(*r.gap), 1e-8);
    }
  }
  EXPECT_EQ(both_interior, 200);
}

TEST(FeasibleSetPipeline, DoublyCenteredInstance) {
  // A·1 = 0 and Aᵀ1 = 0, so y = ε·1 ∈ Ŝ(D) and x = 1 ∈ Ŝ(P); 0 lies on the
  // boundary on both sides. With orthant cones the hypotheses force b = c = 0.
  std::mt19937_64 rng(73);
  Matrix A = oracle::uniform_matrix(rng, 3, 3);
  A.rowwise() -= A.colwise().mean();
  A.colwise() -= A.rowwise().mean();
  ConicProblem pb(Operator(A), Vector::Zero(3), Vector::Zero(3), Cone::orthant(3),
                  Cone::orthant(3));
  const double eps = 0.25;
  const Vector y = Vector::Constant(3, eps);
  EXPECT_TRUE(interior_contains(pb.T, y, 0.0));
  EXPECT_LE((A.transpose() * y).norm(), 1e-12);
  const auto r = verify_theorem_2_2(pb);
  EXPECT_TRUE(*r.flags.f4_holds);
  EXPECT_TRUE(*r.flags.s_hat_p_nonempty);
  EXPECT_TRUE(*r.flags.s_hat_d_nonempty);
  EXPECT_TRUE(*r.flags.s_tilde_minus_hat_p_nonempty);
  EXPECT_TRUE(*r.flags.s_tilde_minus_hat_d_nonempty);
  EXPECT_TRUE(r.preconditions_met);
  EXPECT_TRUE(r.flags.systems_solved.first);
  EXPECT_TRUE(r.flags.systems_solved.second);
  EXPECT_LE(std::abs(*r.gap), 1e-8);
}

TEST(FeasibleSetPipeline, EmptyDualInteriorSet) {
  // A = I, c = (1, 1): −y ∈ S* forces y = 0.
  const auto pb = identity_problem(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1));
  const auto r = verify_theorem_2_2(pb);
  EXPECT_FALSE(*r.flags.s_hat_d_nonempty);
  EXPECT_FALSE(r.preconditions_met);
  EXPECT_TRUE(has_note(r, "precondition not met"));
}

TEST(FeasibleSetPipeline, ProbeF4) {
  EXPECT_TRUE(probe_f4(Cone::orthant(3), 1000, 5));
  EXPECT_TRUE(probe_f4(Cone::wedge({0.4, 1.1}), 1000, 6));
}

TEST(FeasibleSetPipeline, ScalarCounterexampleIsReported) {
  // A = 0, b = −1, c = 1 on ℝ₊: every hypothesis holds, v(P) = v(D) = 0, yet
  // neither 0·x = −1 nor 0·y = 1 is soluble.
  ConicProblem pb(Operator(Matrix::Zero(1, 1)), Vector::Constant(1, -1.0),
                  Vector::Constant(1, 1.0), Cone::orthant(1), Cone::orthant(1));
  try {
    verify_theorem_2_2(pb);
    FAIL() << "expected a theorem violation";
  } catch (const TheoremViolation& e) {
    const auto& r = e.report();
    EXPECT_TRUE(r.preconditions_met);
    EXPECT_EQ(r.v_primal, 0.0);
    EXPECT_EQ(r.v_dual, 0.0);
    EXPECT_EQ(e.code(), ErrorCode::kTheoremViolation);
  }
}

TEST(DualityProperties, WeakDualityAndGapDecomposition) {
  std::mt19937_64 rng(74);
  int pairs = 0;
  for (int t = 0; t < 500; ++t) {
    const auto pb = random_problem(rng);
    const auto r = solve(pb);
    if (r.x_star && r.y_star) {
      ++pairs;
      EXPECT_TRUE(feasible_primal(pb, *r.x_star, 1e-8));
      EXPECT_TRUE(feasible_dual(pb, *r.y_star, 1e-8));
      const double cx = pb.c.dot(*r.x_star), yb = r.y_star->dot(pb.b);
      EXPECT_GE(cx, yb - 1e-8);
      const auto [c1, c2] = *r.comp_residuals;
      EXPECT_GE(c1, -1e-9);
      EXPECT_GE(c2, -1e-9);
    }
    // The decomposition is algebra and holds for arbitrary pairs.
    const Vector x = oracle::gaussian_vector(rng, pb.A.cols());
    const Vector y = oracle::gaussian_vector(rng, pb.A.rows());
    const auto [a1, a2] = complementarity(pb, x, y);
    EXPECT_NEAR(pb.c.dot(x) - y.dot(pb.b), a1 + a2, 1e-10);
  }
  EXPECT_GT(pairs, 50);
}

TEST(DualityProperties, FeasiblePairsRespectWeakDuality) {
  std::mt19937_64 rng(75);
  for (int t = 0; t < 300; ++t) {
    Vector x0, y0;
    const auto pb = interior_problem(rng, x0, y0);
    // Push x up and y down along the cones; both stay feasible.
    const Vector x = x0 + oracle::uniform_vector(rng, x0.size(), 0.0, 1.0);
    const Vector s = oracle::uniform_vector(rng, y0.size(), 0.0, 1.0);
    Vector y = y0;
    if (feasible_primal(pb, x)) {
      EXPECT_GE(pb.c.dot(x), pb.b.dot(y) - 1e-8);
    }
    y = (y0 - 0.05 * s).cwiseMax(0.0);
    if (feasible_dual(pb, y)) {
      EXPECT_GE(pb.c.dot(x0), pb.b.dot(y) - 1e-8);
    }
  }
}

TEST(DualityProperties, CertificateExcludesInteriorDualOptima) {
  std::mt19937_64 rng(76);
  int checked = 0;
  for (int t = 0; t < 600; ++t) {
    const auto pb = random_problem(rng);
    const auto cert = farkas_primal(pb.A, pb.b, pb.S);
    if (cert.branch != FarkasBranch::kCertificate) continue;
    const auto r = solve(pb);
    if (!r.y_star || !std::isfinite(r.v_dual)) continue;
    ++checked;
    EXPECT_FALSE(interior_contains(pb.T, *r.y_star, 1e-9)) << t;
  }
  EXPECT_GT(checked, 20);
}

TEST(DualityProperties, WeightedPairingsAgreeWithRescaledEuclidean) {
  // ⟨u, v⟩_W = ⟨√W u, √W v⟩, so the weighted problem is a change of variables.
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = 3, m = 2;
    const Vector wx = oracle::uniform_vector(rng, n, 0.5, 2.0);
    const Vector wy = oracle::uniform_vector(rng, m, 0.5, 2.0);
    const Matrix A = oracle::uniform_matrix(rng, m, n);
    const Vector b = oracle::uniform_vector(rng, m), c = oracle::uniform_vector(rng, n, 0.1, 1.0);
    ConicProblem weighted(Operator(A), b, c, Cone::orthant(n), Cone::orthant(m),
                          Pairing::weighted(wx), Pairing::weighted(wy));
    ConicProblem plain(Operator(A), b, Vector(wx.cwiseProduct(c)), Cone::orthant(n),
                       Cone::orthant(m), Pairing::euclidean(), Pairing::weighted(wy));
    const auto rw = solve(weighted), rp = solve(plain);
    if (std::isfinite(rw.v_primal)) {
      EXPECT_NEAR(rw.v_primal, rp.v_primal, 1e-9);
    } else {
      EXPECT_EQ(rw.v_primal, rp.v_primal);
    }
  }
}
