#include "conicdual/continuous_lp.hpp"

#include <cmath>
#include <sstream>

#include "conicdual/simplex.hpp"

namespace conicdual {

namespace {

constexpr double kCausalityTol = 1e-12;

template <typename M>
void check_sample(const M& value, Eigen::Index rows, Eigen::Index cols, double bound,
                  const char* field) {
  if (value.rows() != rows || value.cols() != cols) {
    throw Error(ErrorCode::kDimensionMismatch, "callback returned wrong shape", field);
  }
  if (!value.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "callback returned a non-finite value", field);
  }
  if (value.size() > 0 && value.cwiseAbs().maxCoeff() > bound) {
    throw Error(ErrorCode::kInvalidArgument, "sample exceeds the declared bound", field);
  }
}

struct Samples {
  Grid grid;
  std::vector<Matrix> B;
  std::vector<Vector> b, c;
  std::vector<std::vector<Matrix>> K;  // K[j][k] = K(t_j, t_k)
};

Samples sample(const ContinuousLPSpec& spec) {
  spec.validate();
  Samples s;
  s.grid = make_grid(spec);
  const auto& t = s.grid.nodes;
  const std::size_t N = t.size();
  for (std::size_t k = 0; k < N; ++k) {
    s.B.push_back(spec.B(t[k]));
    check_sample(s.B.back(), spec.m, spec.n, spec.bound, "B");
    s.b.push_back(spec.b(t[k]));
    check_sample(s.b.back(), spec.n, 1, spec.bound, "b");
    s.c.push_back(spec.c(t[k]));
    check_sample(s.c.back(), spec.m, 1, spec.bound, "c");
  }
  s.K.assign(N, std::vector<Matrix>(N));
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < N; ++k) {
      s.K[j][k] = spec.K(t[j], t[k]);
      check_sample(s.K[j][k], spec.m, spec.n, spec.bound, "K");
      if (j > k && s.K[j][k].size() > 0 &&
          s.K[j][k].cwiseAbs().maxCoeff() > kCausalityTol) {
        throw Error(ErrorCode::kInvalidArgument,
                    "kernel causality: K(s,t) != 0 for s > t at s=" +
                        std::to_string(t[j]) + ", t=" + std::to_string(t[k]),
                    "K");
      }
    }
  }
  // Off-grid pairs with s > t, between neighbouring nodes.
  for (std::size_t k = 0; k + 1 < N; ++k) {
    const double tt = t[k];
    const double ss = t[k] + 0.5 * s.grid.h;
    const Matrix kv = spec.K(ss, tt);
    if (kv.size() > 0 && kv.allFinite() && kv.cwiseAbs().maxCoeff() > kCausalityTol) {
      throw Error(ErrorCode::kInvalidArgument,
                  "kernel causality: K(s,t) != 0 for s > t at s=" + std::to_string(ss) +
                      ", t=" + std::to_string(tt),
                  "K");
    }
  }
  return s;
}

Matrix assemble(const ContinuousLPSpec& spec, const Samples& s) {
  const Eigen::Index m = spec.m, n = spec.n;
  const auto N = static_cast<Eigen::Index>(s.grid.nodes.size());
  const double h = s.grid.h;
  Matrix A = Matrix::Zero(n * N, m * N);
  for (Eigen::Index k = 0; k < N; ++k) {
    A.block(k * n, k * m, n, m) = s.B[static_cast<std::size_t>(k)].transpose();
    for (Eigen::Index j = k + 1; j < N; ++j) {
      A.block(k * n, j * m, n, m) =
          -h * s.K[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)].transpose();
    }
  }
  return A;
}

bool all_le(const Matrix& a, double v) { return a.size() == 0 || a.maxCoeff() <= v; }
bool all_ge(const Matrix& a, double v) { return a.size() == 0 || a.minCoeff() >= v; }

Vector stack(const std::vector<Vector>& parts) {
  Eigen::Index total = 0;
  for (const Vector& p : parts) total += p.size();
  Vector out(total);
  Eigen::Index r = 0;
  for (const Vector& p : parts) {
    out.segment(r, p.size()) = p;
    r += p.size();
  }
  return out;
}

}  // namespace

void ContinuousLPSpec::validate() const {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive", "m");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be positive", "n");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be positive", "T");
  }
  if (n_grid < 2) throw Error(ErrorCode::kInvalidArgument, "n_grid must be >= 2", "n_grid");
  if (!(bound > 0.0)) throw Error(ErrorCode::kInvalidArgument, "bound must be positive", "bound");
  if (!B || !K || !b || !c) {
    throw Error(ErrorCode::kInvalidArgument, "missing callback", "B/K/b/c");
  }
}

Grid make_grid(const ContinuousLPSpec& spec) {
  Grid g;
  g.h = spec.horizon / spec.n_grid;
  for (int k = 0; k < spec.n_grid; ++k) g.nodes.push_back((k + 0.5) * g.h);
  return g;
}

ConicProblem discretize_clp(const ContinuousLPSpec& spec) {
  const Samples s = sample(spec);
  const double h = s.grid.h;
  const auto N = static_cast<Eigen::Index>(s.grid.nodes.size());
  Matrix A = assemble(spec, s);
  ConicProblem pb(Operator(std::move(A), "A_h"), stack(s.b), stack(s.c),
                  Cone::orthant(spec.m * N), Cone::orthant(spec.n * N),
                  Pairing::weighted(Vector::Constant(spec.m * N, h)),
                  Pairing::weighted(Vector::Constant(spec.n * N, h)));
  return pb;
}

Matrix naive_adjoint_matrix(const ContinuousLPSpec& spec) {
  const Samples s = sample(spec);
  const Eigen::Index m = spec.m, n = spec.n;
  const auto N = static_cast<Eigen::Index>(s.grid.nodes.size());
  const double h = s.grid.h;
  Matrix At = Matrix::Zero(m * N, n * N);
  for (Eigen::Index k = 0; k < N; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    At.block(k * m, k * n, m, n) = s.B[kk] - 0.5 * h * s.K[kk][kk];
    for (Eigen::Index j = 0; j < k; ++j) {
      At.block(k * m, j * n, m, n) = -h * s.K[static_cast<std::size_t>(j)][kk];
    }
  }
  return At;
}

std::string_view to_string(ClpCondition c) {
  switch (c) {
    case ClpCondition::kConditionI: return "condition_i";
    case ClpCondition::kConditionII: return "condition_ii";
    case ClpCondition::kNeither: return "neither";
  }
  return "unknown";
}

ClpCondition theorem_5_2_conditions(const ContinuousLPSpec& spec) {
  const Samples s = sample(spec);
  bool b_le = true, b_ge = true, k_le = true, k_ge = true, b_cone = true, c_neg = true;
  for (std::size_t k = 0; k < s.B.size(); ++k) {
    b_le = b_le && all_le(s.B[k], 0.0);
    b_ge = b_ge && all_ge(s.B[k], 0.0);
    b_cone = b_cone && all_ge(s.b[k], 0.0);
    c_neg = c_neg && all_le(s.c[k], 0.0);
    for (std::size_t j = 0; j < s.B.size(); ++j) {
      k_le = k_le && all_le(s.K[j][k], 0.0);
      k_ge = k_ge && all_ge(s.K[j][k], 0.0);
    }
  }
  if (b_le && k_ge && b_cone) return ClpCondition::kConditionI;
  if (b_ge && k_le && c_neg) return ClpCondition::kConditionII;
  return ClpCondition::kNeither;
}

ClpTheoremReport run_theorem_5_2(const ContinuousLPSpec& spec, const VectorFn& x_hat,
                                 const VectorFn& y_hat, double tol) {
  ClpTheoremReport out;
  out.condition = theorem_5_2_conditions(spec);
  const ConicProblem pb = discretize_clp(spec);
  out.solve = solve(pb);
  if (out.condition == ClpCondition::kNeither) {
    out.solve.notes.push_back("precondition not met: neither sign condition holds");
    return out;
  }
  if (!x_hat || !y_hat) {
    out.solve.notes.push_back("precondition not met: no feasible points supplied");
    return out;
  }
  const Grid grid = make_grid(spec);
  std::vector<Vector> xs, ys;
  for (double t : grid.nodes) {
    xs.push_back(x_hat(t));
    ys.push_back(y_hat(t));
  }
  const Vector xv = stack(xs), yv = stack(ys);
  require_dim(xv.size(), pb.A.cols(), "x_hat");
  require_dim(yv.size(), pb.A.rows(), "y_hat");
  out.min_x_hat = xv.minCoeff();
  out.min_y_hat = yv.minCoeff();
  out.points_supplied = true;
  if (!(out.min_x_hat > 0.0) || !(out.min_y_hat > 0.0) ||
      !feasible_primal(pb, xv, tol) || !feasible_dual(pb, yv, tol)) {
    out.solve.notes.push_back(
        "precondition not met: supplied points are not strictly positive and feasible");
    return out;
  }
  out.solve.preconditions_met = true;

  SolveReport& r = out.solve;
  auto fail = [&](const std::string& what, const Vector& residual, Eigen::Index block) {
    std::ostringstream msg;
    Eigen::Index worst = 0;
    residual.cwiseAbs().maxCoeff(&worst);
    msg << what << " (worst node " << worst / block << ", t="
        << grid.nodes[static_cast<std::size_t>(worst / block)] << ")";
    r.notes.push_back(msg.str());
    throw TheoremViolation(msg.str(), r);
  };

  const FarkasOutcome fp = farkas_primal(pb.A, pb.b, pb.S, pb.pairing_X, pb.pairing_Y, tol);
  if (fp.branch == FarkasBranch::kSolution) {
    r.x_hat = fp.point;
    r.flags.systems_solved.first = true;
  } else {
    const ResidualResult res = residual_minimize(pb.A, pb.b, pb.S, pb.pairing_Y, tol);
    fail("sign condition holds but A_h x = b has no solution in S",
         Vector(res.minimizer_gamma - pb.b), spec.n);
  }
  const FarkasOutcome fd = farkas_dual(pb.A, pb.c, pb.T, pb.pairing_X, pb.pairing_Y, tol);
  if (fd.branch == FarkasBranch::kSolution) {
    r.y_hat = fd.point;
    r.flags.systems_solved.second = true;
  } else {
    const Operator at(adjoint_matrix(pb.A, pb.pairing_X, pb.pairing_Y));
    const ResidualResult res = residual_minimize(at, pb.c, pb.T, pb.pairing_X, tol);
    fail("sign condition holds but A_h^T y = c has no solution in T",
         Vector(res.minimizer_gamma - pb.c), spec.m);
  }
  if (!r.gap || !(std::abs(*r.gap) <= tol)) {
    r.notes.push_back("discrete gap exceeds tolerance");
    throw TheoremViolation("discrete gap exceeds tolerance", r);
  }
  return out;
}

ClpStructureReport check_5_1_5_2(const ContinuousLPSpec& spec) {
  const Samples s = sample(spec);
  ClpStructureReport out;
  const auto N = s.B.size();
  for (std::size_t k = 0; k < N; ++k) {
    // max Σz  s.t. B z ≤ 0, 0 ≤ z ≤ 1; the optimum is 0 iff only z = 0 is admissible.
    LinearProgram lp(spec.n);
    lp.objective.setConstant(-1.0);
    lp.add_le(s.B[k], Vector::Zero(spec.m));
    lp.add_le(Matrix::Identity(spec.n, spec.n), Vector::Ones(spec.n));
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal || sol.value < -1e-9) {
      out.null_intersection = false;
      out.null_intersection_failures.push_back(static_cast<int>(k));
    }
    bool signs = all_ge(s.B[k], 0.0) && all_ge(s.c[k], 0.0);
    for (std::size_t j = 0; j < N; ++j) signs = signs && all_ge(s.K[j][k], 0.0);
    if (!signs) {
      out.signs_nonnegative = false;
      out.sign_failures.push_back(static_cast<int>(k));
    }
  }
  return out;
}

}  // namespace conicdual
