#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conicdual/cones.hpp"
#include "conicdual/farkas.hpp"
#include "conicdual/linops.hpp"
#include "conicdual/simplex.hpp"

namespace conicdual {

// (P)  min ⟨c,x⟩_X   s.t. Ax − b ∈ T*, x ∈ S
// (D)  max ⟨y,b⟩_Y   s.t. c − Aᵀy ∈ S*, y ∈ T
//
// Note the orientation: the primal constraint lands in T* while the dual
// variable lives in T, the reverse of the usual textbook pairing.
struct ConicProblem {
  Operator A;
  Vector b;
  Vector c;
  Cone S;
  Cone T;
  Pairing pairing_X;
  Pairing pairing_Y;

  ConicProblem(Operator A, Vector b, Vector c, Cone S, Cone T,
               Pairing pairing_X = Pairing::euclidean(),
               Pairing pairing_Y = Pairing::euclidean());

  // Dimensions, finiteness, pairing weights and solidity of S and T.
  void validate() const;
};

struct ReportFlags {
  bool primal_interior_opt = false;
  bool dual_interior_opt = false;
  std::optional<bool> f4_holds;
  std::optional<bool> s_hat_p_nonempty;
  std::optional<bool> s_hat_d_nonempty;
  std::optional<bool> s_tilde_minus_hat_p_nonempty;
  std::optional<bool> s_tilde_minus_hat_d_nonempty;
  std::pair<bool, bool> systems_solved{false, false};
};

struct SolveReport {
  double v_primal = 0.0;  // +inf when (P) is infeasible, −inf when unbounded
  double v_dual = 0.0;    // −inf when (D) is infeasible, +inf when unbounded
  LpStatus primal_status = LpStatus::kInfeasible;
  LpStatus dual_status = LpStatus::kInfeasible;
  std::optional<Vector> x_star;
  std::optional<Vector> y_star;
  std::optional<Vector> x_hat;  // Ax̂ = b, x̂ ∈ S
  std::optional<Vector> y_hat;  // Aᵀŷ = c, ŷ ∈ T
  std::optional<double> gap;    // v_primal − v_dual when both are finite
  std::optional<std::pair<double, double>> comp_residuals;
  ReportFlags flags;
  bool preconditions_met = false;
  bool indeterminate = false;  // a required Farkas decision fell in the band
  std::vector<std::string> notes;
};

/// Raised when every hypothesis of a theorem was certified but its
/// conclusion failed at tolerance. Carries the full report.
class TheoremViolation : public Error {
 public:
  TheoremViolation(std::string message, SolveReport report);
  const SolveReport& report() const noexcept { return report_; }

 private:
  SolveReport report_;
};

inline constexpr double kDefaultInteriorMargin = 1e-6;

bool feasible_primal(const ConicProblem& pb, const Vector& x,
                     double tol = kDefaultMembershipTol);
bool feasible_dual(const ConicProblem& pb, const Vector& y,
                   double tol = kDefaultMembershipTol);

/// Both problems as dense LPs in generator coordinates x = G_S u, y = G_T w.
/// The two LPs are exact LP duals of each other.
SolveReport solve(const ConicProblem& pb, double interior_margin = kDefaultInteriorMargin);

/// (⟨y, Ax − b⟩, ⟨c − Aᵀy, x⟩). Their sum is the gap ⟨c,x⟩ − ⟨y,b⟩.
std::pair<double, double> complementarity(const ConicProblem& pb, const Vector& x,
                                          const Vector& y);

/// Solves, classifies the optima as interior or boundary and, when an
/// optimum is interior with finite value, demands a solution of the opposite
/// equality system. With both sides interior, also demands v(P) = v(D).
SolveReport verify_theorem_2_1(const ConicProblem& pb,
                               double tol = kDefaultFeasibilityTol,
                               double interior_margin = kDefaultInteriorMargin);

/// Probes the cone hypothesis and the four feasible-set hypotheses with
/// auxiliary LPs; when all hold and both values are finite, demands both
/// equality systems solved and v(P) = v(D).
SolveReport verify_theorem_2_2(const ConicProblem& pb,
                               double tol = kDefaultFeasibilityTol,
                               int f4_samples = 1000, std::uint64_t seed = 11);

/// Sampled check that the complement of int(cone) is closed under positive
/// scaling.
bool probe_f4(const Cone& cone, int samples, std::uint64_t seed);

}  // namespace conicdual
