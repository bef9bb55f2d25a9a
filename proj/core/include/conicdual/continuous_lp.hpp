#pragma once

#include <functional>
#include <vector>

#include "conicdual/duality.hpp"

namespace conicdual {

using MatrixFn = std::function<Matrix(double)>;
using KernelFn = std::function<Matrix(double, double)>;
using VectorFn = std::function<Vector(double)>;

// min ∫⟨c,x⟩  s.t. (Ax)(t) − b(t) ≥ 0, x ≥ 0 on [0, horizon], with
//   (Aᵀy)(t) = B(t) y(t) − ∫₀ᵗ K(s,t) y(s) ds,
// x(t) ∈ ℝ^m, y(t) ∈ ℝ^n, B(t) and K(s,t) of size m × n, K(s,t) = 0 for s > t.
struct ContinuousLPSpec {
  Eigen::Index m = 1;
  Eigen::Index n = 1;
  double horizon = 1.0;
  int n_grid = 16;
  MatrixFn B;
  KernelFn K;
  VectorFn b;  // n-valued
  VectorFn c;  // m-valued
  double bound = 1e6;  // declared bound on every sample

  void validate() const;
};

struct Grid {
  double h = 0.0;
  std::vector<double> nodes;  // (k + ½) h
};

Grid make_grid(const ContinuousLPSpec& spec);

/// Midpoint discretization. x is stored node-major as (m · n_grid), y as
/// (n · n_grid). The assembled A_h is the exact adjoint, under the weight-h
/// pairing, of the rectangle-rule dual operator
///   (A_hᵀ y)_k = B(t_k) y_k − h Σ_{j<k} K(t_j, t_k) y_j,
/// so (A_h x)_k = B(t_k)ᵀ x_k − h Σ_{j>k} K(t_k, t_j)ᵀ x_j.
ConicProblem discretize_clp(const ContinuousLPSpec& spec);

/// The dual formula discretized on its own with a half-cell diagonal term.
/// It is not the exact adjoint of A_h; the mismatch is O(h).
Matrix naive_adjoint_matrix(const ContinuousLPSpec& spec);

enum class ClpCondition { kConditionI, kConditionII, kNeither };

std::string_view to_string(ClpCondition c);

/// Sign conditions on every grid sample:
///   (i)  B ≤ 0, K ≥ 0 and b ≥ 0;  (ii) B ≥ 0, K ≤ 0 and c ≤ 0.
ClpCondition theorem_5_2_conditions(const ContinuousLPSpec& spec);

struct ClpTheoremReport {
  ClpCondition condition = ClpCondition::kNeither;
  bool points_supplied = false;
  SolveReport solve;
  double min_x_hat = 0.0;
  double min_y_hat = 0.0;
};

/// When a sign condition holds and strictly positive feasible x̂(t), ŷ(t)
/// are supplied, demands both discrete equality systems solved and
/// gap ≤ tol. Throws TheoremViolation with grid diagnostics otherwise.
ClpTheoremReport run_theorem_5_2(const ContinuousLPSpec& spec, const VectorFn& x_hat,
                                 const VectorFn& y_hat,
                                 double tol = kDefaultFeasibilityTol);

struct ClpStructureReport {
  bool null_intersection = true;  // {z : B(t)z ≤ 0, z ≥ 0} = {0} at every node
  bool signs_nonnegative = true;  // B ≥ 0, K ≥ 0, c ≥ 0 at every node
  std::vector<int> null_intersection_failures;
  std::vector<int> sign_failures;
};

ClpStructureReport check_5_1_5_2(const ContinuousLPSpec& spec);

}  // namespace conicdual
