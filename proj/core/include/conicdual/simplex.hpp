#pragma once

#include <string>

#include "conicdual/error.hpp"

namespace conicdual {

// min objectiveᵀx  s.t.  ge_matrix x ≥ ge_rhs, le_matrix x ≤ le_rhs,
//                        eq_matrix x = eq_rhs, x ≥ 0.
// Empty blocks may be left default-constructed (0 rows).
struct LinearProgram {
  Vector objective;
  Matrix ge_matrix;
  Vector ge_rhs;
  Matrix le_matrix;
  Vector le_rhs;
  Matrix eq_matrix;
  Vector eq_rhs;

  explicit LinearProgram(Eigen::Index num_vars = 0);

  Eigen::Index num_vars() const { return objective.size(); }
  void add_ge(const Vector& row, double rhs);
  void add_le(const Vector& row, double rhs);
  void add_eq(const Vector& row, double rhs);
  void add_ge(const Matrix& rows, const Vector& rhs);
  void add_le(const Matrix& rows, const Vector& rhs);
  void add_eq(const Matrix& rows, const Vector& rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;  // objective at x (kOptimal only)
  Vector x;            // optimal vertex, or last vertex before unboundedness
  Vector ray;          // improving feasible direction (kUnbounded only)
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 0;  // 0 selects 50 * (rows + cols) + 1000
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
};

// Cycling guard or a singular final basis. what() carries the basis dump.
class SimplexFailure : public Error {
 public:
  SimplexFailure(std::string message, std::string basis_dump);
  const std::string& basis_dump() const noexcept { return basis_dump_; }

 private:
  std::string basis_dump_;
};

/// Dense two-phase tableau simplex with Bland's rule on both entering and
/// leaving choices. The final basic solution is recomputed from the original
/// data with an LU solve, so reported values do not carry tableau drift.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace conicdual
