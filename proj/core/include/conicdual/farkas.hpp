#pragma once

#include <optional>

#include "conicdual/cones.hpp"
#include "conicdual/linops.hpp"
#include "conicdual/residual.hpp"

namespace conicdual {

// Which alternative pair an outcome answers:
//   kPrimal: (I)  Ax = b, x ∈ S        vs (II)  −Aᵀα ∈ S*, ⟨α,−b⟩ < 0
//   kDual:   (I′) Aᵀy = c, y ∈ T       vs (II′) Ax ∈ T*,   ⟨x,c⟩ < 0
enum class FarkasSystem { kPrimal, kDual };
enum class FarkasBranch { kSolution, kCertificate, kIndeterminate };

std::string_view to_string(FarkasBranch branch);
std::string_view to_string(FarkasSystem system);

struct FarkasResiduals {
  double eq_residual = 0.0;    // ‖Ax − b‖ of the solution branch
  double cone_residual = 0.0;  // distance to S, or dual-cone violation of the certificate
  double strict_margin = 0.0;  // −⟨α,−b⟩ (resp. −⟨x,c⟩) of the unit certificate
  double residual_value = 0.0; // minimum of the residual problem
};

struct FarkasOutcome {
  FarkasSystem system = FarkasSystem::kPrimal;
  FarkasBranch branch = FarkasBranch::kSolution;
  std::optional<Vector> point;  // solution branch (also kept when indeterminate)
  std::optional<Vector> cert;   // certificate branch, unit pairing norm
  FarkasResiduals residuals;
};

/// Decides {Ax = b, x ∈ S} constructively from the residual minimizer γ:
/// a solution x = G_S u when ⟨γ−b,γ−b⟩ ≤ tol², otherwise the certificate
/// α = b − γ of (II), normalized to unit length.
FarkasOutcome farkas_primal(const Operator& A, const Vector& b, const Cone& S,
                            const Pairing& px, const Pairing& py,
                            double tol = kDefaultFeasibilityTol);
FarkasOutcome farkas_primal(const Operator& A, const Vector& b, const Cone& S,
                            double tol = kDefaultFeasibilityTol);

/// Same construction on D_A = {Aᵀy : y ∈ T}; the certificate of (II′) is
/// x = δ − c where δ is the residual minimizer.
FarkasOutcome farkas_dual(const Operator& A, const Vector& c, const Cone& T,
                          const Pairing& px, const Pairing& py,
                          double tol = kDefaultFeasibilityTol);
FarkasOutcome farkas_dual(const Operator& A, const Vector& c, const Cone& T,
                          double tol = kDefaultFeasibilityTol);

/// Recomputes the residuals of the populated branch from the problem data.
FarkasResiduals evaluate_outcome(const FarkasOutcome& outcome, const Operator& A,
                                 const Vector& rhs, const Cone& cone,
                                 const Pairing& px, const Pairing& py);

/// True iff the populated branch satisfies its system at tol. Indeterminate
/// outcomes never verify.
bool verify_outcome(const FarkasOutcome& outcome, const Operator& A,
                    const Vector& rhs, const Cone& cone, const Pairing& px,
                    const Pairing& py, double tol = kDefaultFeasibilityTol);
bool verify_outcome(const FarkasOutcome& outcome, const Operator& A,
                    const Vector& rhs, const Cone& cone,
                    double tol = kDefaultFeasibilityTol);

/// Independent simplex routes, used to cross-check the residual engine.
/// Certificate search: the (II)/(II′) inequalities with margin normalized to 1.
std::optional<Vector> search_certificate_lp(FarkasSystem system, const Operator& A,
                                            const Vector& rhs, const Cone& cone,
                                            const Pairing& px, const Pairing& py);
/// Solution search: phase-1 feasibility of the equality system over the cone.
std::optional<Vector> search_solution_lp(FarkasSystem system, const Operator& A,
                                         const Vector& rhs, const Cone& cone,
                                         const Pairing& px, const Pairing& py);

}  // namespace conicdual
