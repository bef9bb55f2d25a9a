#include "conicdual/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace conicdual {

NnlsNonConvergence::NnlsNonConvergence(NnlsResult best)
    : Error(ErrorCode::kNonConvergence,
            "NNLS active-set iteration cap reached"),
      best_(std::move(best)) {}

namespace {

// Least squares restricted to the passive columns; other entries are zero.
Vector passive_solve(const Matrix& M, const Vector& b,
                     const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    if (passive[j]) cols.push_back(j);
  }
  Vector z = Vector::Zero(M.cols());
  if (cols.empty()) return z;
  Matrix sub(M.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(k) = M.col(cols[k]);
  const Vector zs = sub.completeOrthogonalDecomposition().solve(b);
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(k);
  return z;
}

double kkt_measure(const Vector& w, const std::vector<bool>& passive) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    r = std::max(r, passive[j] ? std::abs(w(j)) : std::max(w(j), 0.0));
  }
  return r;
}

}  // namespace

NnlsResult solve_nnls(const Matrix& M, const Vector& b,
                      const NnlsOptions& options) {
  require_dim(b.size(), M.rows(), "b");
  require_finite(M, "M");
  require_finite(b, "b");

  const Eigen::Index n = M.cols();
  const int cap = options.max_iterations > 0
                      ? options.max_iterations
                      : 100 * static_cast<int>(n + M.rows());
  const double scale =
      std::max(1.0, (M.cwiseAbs().colwise().sum().maxCoeff() + 1.0) *
                        (b.cwiseAbs().maxCoeff() + 1.0));
  const double eps = options.kkt_tolerance * scale;

  NnlsResult result;
  result.u = Vector::Zero(n);
  if (n == 0) {
    result.residual_sq = b.squaredNorm();
    return result;
  }

  std::vector<bool> passive(n, false);
  std::vector<bool> rejected(n, false);
  Vector& u = result.u;
  Vector w = M.transpose() * (b - M * u);
  int iterations = 0;

  auto finish = [&]() {
    const Vector r = M * u - b;
    result.residual_sq = r.squaredNorm();
    result.iterations = iterations;
    result.kkt_residual = kkt_measure(M.transpose() * (-r), passive);
    return result;
  };

  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && !rejected[j] && w(j) > eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (++iterations > cap) throw NnlsNonConvergence(finish());

    passive[enter] = true;
    Vector z = passive_solve(M, b, passive);
    if (z(enter) <= 0.0) {
      // Roundoff made the entering column useless; skip it until the
      // passive set changes.
      passive[enter] = false;
      rejected[enter] = true;
      continue;
    }

    while (true) {
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) {
          feasible = false;
          break;
        }
      }
      if (feasible) break;
      if (++iterations > cap) throw NnlsNonConvergence(finish());

      double step = std::numeric_limits<double>::infinity();
      Eigen::Index blocking = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) {
          const double ratio = u(j) / (u(j) - z(j));
          if (ratio < step) {
            step = ratio;
            blocking = j;
          }
        }
      }
      u += step * (z - u);
      u(blocking) = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && u(j) <= 0.0) {
          passive[j] = false;
          u(j) = 0.0;
        }
      }
      z = passive_solve(M, b, passive);
    }
    for (Eigen::Index j = 0; j < n; ++j) u(j) = passive[j] ? z(j) : 0.0;
    std::fill(rejected.begin(), rejected.end(), false);
    w = M.transpose() * (b - M * u);
  }
  return finish();
}

}  // namespace conicdual
