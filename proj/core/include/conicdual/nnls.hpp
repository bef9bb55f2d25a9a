#pragma once

#include "conicdual/error.hpp"

namespace conicdual {

struct NnlsOptions {
  // Outer+inner iteration cap; 0 selects 100 * (cols + rows).
  int max_iterations = 0;
  // Relative KKT tolerance on the gradient Mᵀ(b − Mu).
  double kkt_tolerance = 1e-13;
};

struct NnlsResult {
  Vector u;
  double residual_sq = 0.0;  // ‖M u − b‖²
  int iterations = 0;
  double kkt_residual = 0.0;
};

// Raised when the active-set loop hits its cap; carries the best iterate.
class NnlsNonConvergence : public Error {
 public:
  explicit NnlsNonConvergence(NnlsResult best);
  const NnlsResult& best() const noexcept { return best_; }

 private:
  NnlsResult best_;
};

/// Lawson–Hanson active-set solver for min ‖M u − b‖², u ≥ 0.
///
/// The entering index is the smallest one with a positive gradient
/// component (Bland-style), which rules out cycling between active sets.
NnlsResult solve_nnls(const Matrix& M, const Vector& b,
                      const NnlsOptions& options = {});

}  // namespace conicdual
