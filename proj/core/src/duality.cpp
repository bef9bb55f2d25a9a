#include "conicdual/duality.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace conicdual {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMarginFloor = 1e-9;
constexpr double kF4Slack = 1e-9;

// Generator coordinates x = G_S u, y = G_T w. Both LPs share
//   M = G_Tᵀ W_Y A G_S,  q = G_Tᵀ W_Y b,  p = G_Sᵀ W_X c,
// (P) ≡ min pᵀu s.t. M u ≥ q, u ≥ 0 and (D) ≡ max qᵀw s.t. Mᵀw ≤ p, w ≥ 0.
struct Reduced {
  Matrix gs;
  Matrix gt;
  Matrix M;
  Vector q;
  Vector p;
};

Reduced reduce(const ConicProblem& pb) {
  Reduced r;
  r.gs = pb.S.generators();
  r.gt = pb.T.generators();
  const Vector wx = pb.pairing_X.gram_diagonal(pb.A.cols());
  const Vector wy = pb.pairing_Y.gram_diagonal(pb.A.rows());
  const Matrix gt_w = r.gt.transpose() * wy.asDiagonal();
  r.M = gt_w * pb.A.matrix * r.gs;
  r.q = gt_w * pb.b;
  r.p = r.gs.transpose() * wx.cwiseProduct(pb.c);
  return r;
}

bool in_s_hat_p(const ConicProblem& pb, const Vector& x, double tol) {
  const Vector ax = apply(pb.A, x);
  return interior_contains(pb.S, x, 0.0) &&
         dual_contains(pb.T, ax - pb.b, pb.pairing_Y, tol) &&
         dual_contains(pb.T, ax, pb.pairing_Y, tol);
}

bool in_s_hat_d(const ConicProblem& pb, const Vector& y, double tol) {
  const Vector aty = adjoint_apply(pb.A, y, pb.pairing_X, pb.pairing_Y);
  return interior_contains(pb.T, y, 0.0) &&
         dual_contains(pb.S, pb.c - aty, pb.pairing_X, tol) &&
         dual_contains(pb.S, -aty, pb.pairing_X, tol);
}

// max s s.t. v ≥ s·1, s ≤ 1, plus the given ≥ rows on v. Returns G v when
// the optimum is positive.
std::optional<Vector> margin_point(const Matrix& g, const Matrix& rows,
                                   const Vector& rhs, const Matrix& hom_rows) {
  const Eigen::Index k = g.cols();
  LinearProgram lp(k + 1);
  lp.objective(k) = -1.0;
  Matrix pad(rows.rows(), k + 1);
  pad << rows, Vector::Zero(rows.rows());
  lp.add_ge(pad, rhs);
  Matrix hpad(hom_rows.rows(), k + 1);
  hpad << hom_rows, Vector::Zero(hom_rows.rows());
  lp.add_ge(hpad, Vector::Zero(hom_rows.rows()));
  Matrix margin = Matrix::Zero(k, k + 1);
  margin.leftCols(k).setIdentity();
  margin.col(k).setConstant(-1.0);
  lp.add_ge(margin, Vector::Zero(k));
  Vector cap = Vector::Zero(k + 1);
  cap(k) = 1.0;
  lp.add_le(cap, 1.0);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal || sol.x(k) <= kMarginFloor) return std::nullopt;
  return Vector(g * sol.x.head(k));
}

// A feasible point of {rows·v ≥ rhs, v ≥ 0, v_j = 0} for each j in turn.
template <typename Accept>
std::optional<Vector> boundary_point(const Matrix& g, const Matrix& rows,
                                     const Vector& rhs, Accept accept) {
  const Eigen::Index k = g.cols();
  for (Eigen::Index j = 0; j < k; ++j) {
    LinearProgram lp(k);
    lp.add_ge(rows, rhs);
    Vector e = Vector::Zero(k);
    e(j) = 1.0;
    lp.add_eq(e, 0.0);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) continue;
    Vector v = g * sol.x;
    if (accept(v)) return v;
  }
  return std::nullopt;
}

double value_scale(const SolveReport& r) {
  double s = 1.0;
  if (std::isfinite(r.v_primal)) s = std::max(s, std::abs(r.v_primal));
  if (std::isfinite(r.v_dual)) s = std::max(s, std::abs(r.v_dual));
  return s;
}

[[noreturn]] void violation(std::string message, SolveReport report) {
  report.notes.push_back(message);
  throw TheoremViolation(std::move(message), std::move(report));
}

// Demands Ax = b, x ∈ S. Returns false if the decision was indeterminate.
bool require_primal_system(const ConicProblem& pb, SolveReport& r, double tol,
                           const char* why) {
  const FarkasOutcome out =
      farkas_primal(pb.A, pb.b, pb.S, pb.pairing_X, pb.pairing_Y, tol);
  if (out.branch == FarkasBranch::kSolution) {
    r.x_hat = out.point;
    r.flags.systems_solved.first = true;
    return true;
  }
  if (out.branch == FarkasBranch::kIndeterminate) {
    r.indeterminate = true;
    r.notes.push_back("Ax = b, x in S: indeterminate band");
    return false;
  }
  violation(std::string(why) + " but Ax = b, x in S has a certificate", r);
}

bool require_dual_system(const ConicProblem& pb, SolveReport& r, double tol,
                         const char* why) {
  const FarkasOutcome out =
      farkas_dual(pb.A, pb.c, pb.T, pb.pairing_X, pb.pairing_Y, tol);
  if (out.branch == FarkasBranch::kSolution) {
    r.y_hat = out.point;
    r.flags.systems_solved.second = true;
    return true;
  }
  if (out.branch == FarkasBranch::kIndeterminate) {
    r.indeterminate = true;
    r.notes.push_back("A^T y = c, y in T: indeterminate band");
    return false;
  }
  violation(std::string(why) + " but A^T y = c, y in T has a certificate", r);
}

// With both equality systems solved, ⟨c,x̂⟩ = ⟨ŷ,Ax̂⟩ = ⟨ŷ,b⟩, so the values
// must agree and x̂, ŷ must attain them.
void require_strong_duality(const ConicProblem& pb, SolveReport& r, double tol) {
  const double scale = value_scale(r);
  if (!(std::abs(r.v_primal - r.v_dual) <= tol * scale)) {
    violation("equality systems solved but v(P) != v(D)", r);
  }
  const double cx = pairing(pb.pairing_X, pb.c, *r.x_hat);
  const double yb = pairing(pb.pairing_Y, *r.y_hat, pb.b);
  const double opt_tol = tol * (scale + r.x_hat->norm() + r.y_hat->norm());
  if (!(std::abs(cx - r.v_primal) <= opt_tol) || !(std::abs(yb - r.v_dual) <= opt_tol)) {
    violation("equality-system solutions are not optimal", r);
  }
}

}  // namespace

ConicProblem::ConicProblem(Operator A_, Vector b_, Vector c_, Cone S_, Cone T_,
                           Pairing pairing_X_, Pairing pairing_Y_)
    : A(std::move(A_)),
      b(std::move(b_)),
      c(std::move(c_)),
      S(std::move(S_)),
      T(std::move(T_)),
      pairing_X(std::move(pairing_X_)),
      pairing_Y(std::move(pairing_Y_)) {}

void ConicProblem::validate() const {
  require_finite(A.matrix, "A");
  require_finite(b, "b");
  require_finite(c, "c");
  require_dim(b.size(), A.rows(), "b");
  require_dim(c.size(), A.cols(), "c");
  require_dim(S.ambient_dim(), A.cols(), "S");
  require_dim(T.ambient_dim(), A.rows(), "T");
  pairing_X.gram_diagonal(A.cols());
  pairing_Y.gram_diagonal(A.rows());
  if (!S.solid() || !interior_contains(S, interior_point(S), 0.0)) {
    throw Error(ErrorCode::kF1Violated, "S has empty interior", "S");
  }
  if (!T.solid() || !interior_contains(T, interior_point(T), 0.0)) {
    throw Error(ErrorCode::kF1Violated, "T has empty interior", "T");
  }
}

TheoremViolation::TheoremViolation(std::string message, SolveReport report)
    : Error(ErrorCode::kTheoremViolation, std::move(message)),
      report_(std::move(report)) {}

bool feasible_primal(const ConicProblem& pb, const Vector& x, double tol) {
  require_dim(x.size(), pb.A.cols(), "x");
  return contains(pb.S, x, tol) &&
         dual_contains(pb.T, apply(pb.A, x) - pb.b, pb.pairing_Y, tol);
}

bool feasible_dual(const ConicProblem& pb, const Vector& y, double tol) {
  require_dim(y.size(), pb.A.rows(), "y");
  const Vector slack = pb.c - adjoint_apply(pb.A, y, pb.pairing_X, pb.pairing_Y);
  return contains(pb.T, y, tol) && dual_contains(pb.S, slack, pb.pairing_X, tol);
}

std::pair<double, double> complementarity(const ConicProblem& pb, const Vector& x,
                                          const Vector& y) {
  require_dim(x.size(), pb.A.cols(), "x");
  require_dim(y.size(), pb.A.rows(), "y");
  const double first = pairing(pb.pairing_Y, y, apply(pb.A, x) - pb.b);
  const double second = pairing(
      pb.pairing_X, pb.c - adjoint_apply(pb.A, y, pb.pairing_X, pb.pairing_Y), x);
  return {first, second};
}

SolveReport solve(const ConicProblem& pb, double interior_margin) {
  pb.validate();
  const Reduced red = reduce(pb);
  SolveReport r;

  LinearProgram primal(red.gs.cols());
  primal.objective = red.p;
  primal.add_ge(red.M, red.q);
  const LpSolution ps = solve_lp(primal);
  r.primal_status = ps.status;
  switch (ps.status) {
    case LpStatus::kOptimal:
      r.x_star = red.gs * ps.x;
      r.v_primal = pairing(pb.pairing_X, pb.c, *r.x_star) + 0.0;  // folds -0
      break;
    case LpStatus::kInfeasible: r.v_primal = kInf; break;
    case LpStatus::kUnbounded: r.v_primal = -kInf; break;
  }

  LinearProgram dual(red.gt.cols());
  dual.objective = -red.q;
  dual.add_le(Matrix(red.M.transpose()), red.p);
  const LpSolution ds = solve_lp(dual);
  r.dual_status = ds.status;
  switch (ds.status) {
    case LpStatus::kOptimal:
      r.y_star = red.gt * ds.x;
      r.v_dual = pairing(pb.pairing_Y, *r.y_star, pb.b) + 0.0;
      break;
    case LpStatus::kInfeasible: r.v_dual = -kInf; break;
    case LpStatus::kUnbounded: r.v_dual = kInf; break;
  }

  if (std::isfinite(r.v_primal) && std::isfinite(r.v_dual)) {
    r.gap = r.v_primal - r.v_dual;
  }
  if (r.x_star && r.y_star) {
    r.comp_residuals = complementarity(pb, *r.x_star, *r.y_star);
  }
  r.flags.primal_interior_opt =
      r.x_star && interior_contains(pb.S, *r.x_star, interior_margin);
  r.flags.dual_interior_opt =
      r.y_star && interior_contains(pb.T, *r.y_star, interior_margin);
  return r;
}

SolveReport verify_theorem_2_1(const ConicProblem& pb, double tol,
                               double interior_margin) {
  SolveReport r = solve(pb, interior_margin);
  const bool dual_side = r.flags.dual_interior_opt && r.v_dual < kInf;
  const bool primal_side = r.flags.primal_interior_opt && r.v_primal > -kInf;

  if (dual_side) require_primal_system(pb, r, tol, "interior dual optimum");
  if (primal_side) require_dual_system(pb, r, tol, "interior primal optimum");

  r.preconditions_met = dual_side && primal_side && std::isfinite(r.v_primal) &&
                        std::isfinite(r.v_dual);
  if (!r.preconditions_met) {
    r.notes.push_back("precondition not met");
    if (!dual_side) r.notes.push_back("no dual optimum in int T");
    if (!primal_side) r.notes.push_back("no primal optimum in int S");
    return r;
  }
  if (r.flags.systems_solved.first && r.flags.systems_solved.second) {
    require_strong_duality(pb, r, tol);
  }
  return r;
}

bool probe_f4(const Cone& cone, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> log_mu(-3.0, 3.0);
  std::uniform_int_distribution<Eigen::Index> pick(0, cone.generators().cols() - 1);
  const Eigen::Index n = cone.ambient_dim();
  const Matrix& g = cone.generators();
  for (int s = 0; s < samples; ++s) {
    Vector v(n);
    if (s % 2 == 0) {
      for (Eigen::Index i = 0; i < n; ++i) v(i) = gauss(rng);
    } else {
      // Boundary-leaning: a nonnegative combination with one generator dropped.
      Vector u(g.cols());
      for (Eigen::Index j = 0; j < u.size(); ++j) u(j) = std::abs(gauss(rng));
      u(pick(rng)) = 0.0;
      v = g * u;
    }
    if (interior_contains(cone, v, 0.0)) continue;
    const double mu = std::pow(10.0, log_mu(rng));
    // Rescaling moves exact boundary points by rounding; only a clear entry
    // into the interior counts.
    if (interior_contains(cone, Vector(mu * v), kF4Slack)) return false;
  }
  return true;
}

SolveReport verify_theorem_2_2(const ConicProblem& pb, double tol, int f4_samples,
                               std::uint64_t seed) {
  SolveReport r = solve(pb);
  const Reduced red = reduce(pb);
  const Matrix mt = red.M.transpose();

  r.flags.f4_holds = probe_f4(pb.S, f4_samples, seed) && probe_f4(pb.T, f4_samples, seed + 1);

  // Ŝ(P): x = G_S u with u > 0, Ax − b ∈ T*, Ax ∈ T*.
  const auto xp = margin_point(red.gs, red.M, red.q, red.M);
  r.flags.s_hat_p_nonempty = xp && in_s_hat_p(pb, *xp, tol);
  // Ŝ(D): y = G_T w with w > 0, c − Aᵀy ∈ S*, −Aᵀy ∈ S*.
  const auto yd = margin_point(red.gt, -mt, -red.p, -mt);
  r.flags.s_hat_d_nonempty = yd && in_s_hat_d(pb, *yd, tol);

  auto outside_p = [&](const Vector& x) {
    return feasible_primal(pb, x, tol) && !in_s_hat_p(pb, x, tol);
  };
  auto outside_d = [&](const Vector& y) {
    return feasible_dual(pb, y, tol) && !in_s_hat_d(pb, y, tol);
  };
  bool tp = outside_p(Vector::Zero(pb.A.cols())) || (r.x_star && outside_p(*r.x_star));
  if (!tp) tp = boundary_point(red.gs, red.M, red.q, outside_p).has_value();
  bool td = outside_d(Vector::Zero(pb.A.rows())) || (r.y_star && outside_d(*r.y_star));
  if (!td) td = boundary_point(red.gt, -mt, -red.p, outside_d).has_value();
  r.flags.s_tilde_minus_hat_p_nonempty = tp;
  r.flags.s_tilde_minus_hat_d_nonempty = td;

  r.preconditions_met = *r.flags.f4_holds && *r.flags.s_hat_p_nonempty &&
                        *r.flags.s_hat_d_nonempty && tp && td &&
                        std::isfinite(r.v_primal) && std::isfinite(r.v_dual);
  if (!r.preconditions_met) {
    r.notes.push_back("precondition not met");
    return r;
  }
  const bool ok_p = require_primal_system(pb, r, tol, "feasible-set hypotheses hold");
  const bool ok_d = require_dual_system(pb, r, tol, "feasible-set hypotheses hold");
  if (ok_p && ok_d) require_strong_duality(pb, r, tol);
  return r;
}

}  // namespace conicdual
