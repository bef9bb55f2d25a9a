#include "conicdual/farkas.hpp"

#include <cmath>

#include "conicdual/simplex.hpp"

namespace conicdual {

std::string_view to_string(FarkasBranch branch) {
  switch (branch) {
    case FarkasBranch::kSolution: return "solution";
    case FarkasBranch::kCertificate: return "certificate";
    case FarkasBranch::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

std::string_view to_string(FarkasSystem system) {
  return system == FarkasSystem::kPrimal ? "primal" : "dual";
}

namespace {

// The pair (operator, pairing on its domain, pairing on its range) whose
// equality system the outcome answers: A for kPrimal, the adjoint for kDual.
struct SystemView {
  Operator op;
  Pairing domain;
  Pairing range;
};

SystemView view_of(FarkasSystem system, const Operator& A, const Pairing& px,
                   const Pairing& py) {
  if (system == FarkasSystem::kPrimal) return {A, px, py};
  return {Operator(adjoint_matrix(A, px, py), "adjoint"), py, px};
}

// Violation of the certificate's cone condition. For (II): −Aᵀα ∈ S*.
// For (II′): Ax ∈ T*.
double certificate_cone_violation(FarkasSystem system, const Operator& A,
                                  const Vector& cert, const Cone& cone,
                                  const Pairing& px, const Pairing& py) {
  if (system == FarkasSystem::kPrimal) {
    return dual_violation(cone, -adjoint_apply(A, cert, px, py), px);
  }
  return dual_violation(cone, apply(A, cert), py);
}

FarkasOutcome decide(FarkasSystem system, const Operator& A, const Vector& rhs,
                     const Cone& cone, const Pairing& px, const Pairing& py,
                     double tol) {
  const SystemView view = view_of(system, A, px, py);
  const ResidualResult res = residual_minimize(view.op, rhs, cone, view.range, tol);

  FarkasOutcome out;
  out.system = system;
  out.residuals.residual_value = res.value;
  const bool in_band = res.value > tol * tol / 10.0 && res.value < 10.0 * tol * tol;

  out.point = res.preimage_x;
  // (II) uses α = b − γ; (II′) uses x = δ − c.
  Vector cert = system == FarkasSystem::kPrimal ? Vector(rhs - res.minimizer_gamma)
                                                : Vector(res.minimizer_gamma - rhs);
  const double norm = pairing_norm(view.range, cert);
  if (norm > 0.0) {
    cert /= norm;
    out.cert = cert;
  }

  out.branch = res.value <= tol * tol ? FarkasBranch::kSolution : FarkasBranch::kCertificate;
  if (out.branch == FarkasBranch::kCertificate && !out.cert) {
    out.branch = FarkasBranch::kIndeterminate;
  }
  if (out.branch != FarkasBranch::kIndeterminate) {
    out.residuals = evaluate_outcome(out, A, rhs, cone, px, py);
    out.residuals.residual_value = res.value;
    if (in_band && !verify_outcome(out, A, rhs, cone, px, py, tol)) {
      out.branch = FarkasBranch::kIndeterminate;
    }
  }
  if (out.branch == FarkasBranch::kSolution) {
    out.cert.reset();
  } else if (out.branch == FarkasBranch::kCertificate) {
    out.point.reset();
  }
  return out;
}

}  // namespace

FarkasOutcome farkas_primal(const Operator& A, const Vector& b, const Cone& S,
                            const Pairing& px, const Pairing& py, double tol) {
  require_dim(S.ambient_dim(), A.cols(), "S");
  require_dim(b.size(), A.rows(), "b");
  return decide(FarkasSystem::kPrimal, A, b, S, px, py, tol);
}

FarkasOutcome farkas_primal(const Operator& A, const Vector& b, const Cone& S,
                            double tol) {
  return farkas_primal(A, b, S, Pairing::euclidean(), Pairing::euclidean(), tol);
}

FarkasOutcome farkas_dual(const Operator& A, const Vector& c, const Cone& T,
                          const Pairing& px, const Pairing& py, double tol) {
  require_dim(T.ambient_dim(), A.rows(), "T");
  require_dim(c.size(), A.cols(), "c");
  return decide(FarkasSystem::kDual, A, c, T, px, py, tol);
}

FarkasOutcome farkas_dual(const Operator& A, const Vector& c, const Cone& T,
                          double tol) {
  return farkas_dual(A, c, T, Pairing::euclidean(), Pairing::euclidean(), tol);
}

FarkasResiduals evaluate_outcome(const FarkasOutcome& outcome, const Operator& A,
                                 const Vector& rhs, const Cone& cone,
                                 const Pairing& px, const Pairing& py) {
  const SystemView view = view_of(outcome.system, A, px, py);
  FarkasResiduals r;
  if (outcome.branch == FarkasBranch::kSolution && outcome.point) {
    const Vector& x = *outcome.point;
    require_dim(x.size(), view.op.cols(), "point");
    r.eq_residual = pairing_norm(view.range, apply(view.op, x) - rhs);
    r.cone_residual = distance(cone, x);
  } else if (outcome.branch == FarkasBranch::kCertificate && outcome.cert) {
    Vector cert = *outcome.cert;
    require_dim(cert.size(), view.op.rows(), "cert");
    const double norm = pairing_norm(view.range, cert);
    if (norm > 0.0) cert /= norm;
    r.cone_residual =
        certificate_cone_violation(outcome.system, A, cert, cone, px, py);
    // (II): ⟨α,−b⟩ ≤ −margin. (II′): ⟨x,c⟩ ≤ −margin.
    r.strict_margin = outcome.system == FarkasSystem::kPrimal
                          ? pairing(view.range, cert, rhs)
                          : -pairing(view.range, cert, rhs);
  }
  return r;
}

bool verify_outcome(const FarkasOutcome& outcome, const Operator& A,
                    const Vector& rhs, const Cone& cone, const Pairing& px,
                    const Pairing& py, double tol) {
  const FarkasResiduals r = evaluate_outcome(outcome, A, rhs, cone, px, py);
  switch (outcome.branch) {
    case FarkasBranch::kSolution:
      return outcome.point.has_value() && r.eq_residual <= tol && r.cone_residual <= tol;
    case FarkasBranch::kCertificate:
      return outcome.cert.has_value() && outcome.cert->norm() > 0.0 &&
             r.cone_residual <= tol && r.strict_margin > tol;
    case FarkasBranch::kIndeterminate:
      return false;
  }
  return false;
}

bool verify_outcome(const FarkasOutcome& outcome, const Operator& A,
                    const Vector& rhs, const Cone& cone, double tol) {
  return verify_outcome(outcome, A, rhs, cone, Pairing::euclidean(),
                        Pairing::euclidean(), tol);
}

std::optional<Vector> search_certificate_lp(FarkasSystem system, const Operator& A,
                                            const Vector& rhs, const Cone& cone,
                                            const Pairing& px, const Pairing& py) {
  const SystemView view = view_of(system, A, px, py);
  const Eigen::Index n = view.op.rows();  // certificate lives in the range
  const Vector w = view.range.gram_diagonal(n);
  const Matrix& g = cone.generators();

  // Certificate v = p − q, p, q ≥ 0.
  LinearProgram lp(2 * n);
  lp.objective.setOnes();
  Matrix cone_rows(g.cols(), n);
  if (system == FarkasSystem::kPrimal) {
    // ⟨g, −Aᵀα⟩_X = −(A g)ᵀ W_Y α ≥ 0
    cone_rows = -(A.matrix * g).transpose() * w.asDiagonal();
  } else {
    // ⟨h, A x⟩_Y = hᵀ W_Y A x ≥ 0
    cone_rows = g.transpose() * py.gram_diagonal(A.rows()).asDiagonal() * A.matrix;
  }
  Matrix split(cone_rows.rows(), 2 * n);
  split << cone_rows, -cone_rows;
  lp.add_ge(split, Vector::Zero(cone_rows.rows()));
  // Margin: ⟨α, b⟩ ≥ 1 for (II); ⟨x, c⟩ ≤ −1 for (II′).
  Vector margin(2 * n);
  const Vector wr = w.cwiseProduct(rhs);
  margin << wr, -wr;
  if (system == FarkasSystem::kPrimal) {
    lp.add_ge(margin, 1.0);
  } else {
    lp.add_le(margin, -1.0);
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  Vector v = sol.x.head(n) - sol.x.tail(n);
  const double norm = pairing_norm(view.range, v);
  if (norm == 0.0) return std::nullopt;
  return Vector(v / norm);
}

std::optional<Vector> search_solution_lp(FarkasSystem system, const Operator& A,
                                         const Vector& rhs, const Cone& cone,
                                         const Pairing& px, const Pairing& py) {
  const SystemView view = view_of(system, A, px, py);
  const Matrix& g = cone.generators();
  LinearProgram lp(g.cols());
  lp.add_eq(Matrix(view.op.matrix * g), rhs);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  return Vector(g * sol.x);
}

}  // namespace conicdual
