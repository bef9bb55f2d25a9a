#pragma once

// Brute-force references used only by the tests. None of these call the
// library's solvers.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// min ‖A x − b‖² over the grid {0, step, 2·step, …}² ∩ [0, L]².
inline double grid_residual_2d(const Matrix& A, const Vector& b, double L, double step) {
  const int n = static_cast<int>(std::llround(L / step));
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double x0 = i * step;
    for (int j = 0; j <= n; ++j) {
      const double x1 = j * step;
      const double r0 = A(0, 0) * x0 + A(0, 1) * x1 - b(0);
      const double r1 = A(1, 0) * x0 + A(1, 1) * x1 - b(1);
      best = std::min(best, r0 * r0 + r1 * r1);
    }
  }
  return best;
}

/// min (a x − b)² over x ∈ [0, L] on a 1-D grid.
inline double grid_residual_1d(double a, double b, double L, double step) {
  const int n = static_cast<int>(std::llround(L / step));
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double r = a * (i * step) - b;
    best = std::min(best, r * r);
  }
  return best;
}

/// |wrapped(arg z − center)| ≤ half, by direct angle arithmetic.
inline bool in_sector(double x, double y, double center, double half, double tol) {
  if (std::hypot(x, y) <= tol) return true;
  const double off = std::remainder(std::atan2(y, x) - center, 2.0 * kPi);
  return std::abs(off) <= half + tol;
}

/// Re(conj(u)·w) ≥ −tol for both edge rays w of the sector: u lies in the
/// real-part dual of the sector.
inline bool in_dual_sector(Complex u, double center, double half, double tol) {
  const Complex e1 = std::polar(1.0, center - half);
  const Complex e2 = std::polar(1.0, center + half);
  return (std::conj(u) * e1).real() >= -tol && (std::conj(u) * e2).real() >= -tol;
}

/// min Re(conj(c)·z) over z = r e^{iθ} on a polar grid: θ = center_s + i·dθ
/// inside the sector plus both edge angles, r = k·dr ∈ [0, R]. Feasibility:
/// a z − b lies in the dual of the sector (center_t, half_t). Returns +inf if
/// no grid point is feasible.
inline double complex_polar_min(Complex a, Complex b, Complex c, double center_s,
                                double half_s, double center_t, double half_t, double R,
                                double dtheta, double dr) {
  const int nt = static_cast<int>(std::floor(half_s / dtheta));
  const int nr = static_cast<int>(std::llround(R / dr));
  std::vector<double> thetas{center_s - half_s, center_s + half_s};
  for (int i = -nt; i <= nt; ++i) thetas.push_back(center_s + i * dtheta);
  double best = std::numeric_limits<double>::infinity();
  for (double theta : thetas) {
    const Complex dir = std::polar(1.0, theta);
    for (int k = 0; k <= nr; ++k) {
      const Complex z = (k * dr) * dir;
      if (!in_dual_sector(a * z - b, center_t, half_t, 1e-12)) continue;
      best = std::min(best, (std::conj(c) * z).real());
    }
  }
  return best;
}

/// Hand-assembled A_h for B ≡ 1, K ≡ κ (1 × 1 blocks) on N nodes:
/// 1 on the diagonal and −h κ in every later column.
inline Matrix clp_constant_kernel_matrix(int N, double h, double kappa) {
  Matrix A = Matrix::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    A(k, k) = 1.0;
    for (int j = k + 1; j < N; ++j) A(k, j) = -h * kappa;
  }
  return A;
}

/// min cᵀx over {x ∈ ℝ² : G x ≥ q} by enumerating pairwise row intersections.
/// Returns +inf if no vertex is feasible (the tests only use bounded cases).
inline double lp_vertex_min_2d(const Matrix& G, const Vector& q, const Vector& c) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < G.rows(); ++i) {
    for (int j = i + 1; j < G.rows(); ++j) {
      Eigen::Matrix2d M;
      M << G(i, 0), G(i, 1), G(j, 0), G(j, 1);
      if (std::abs(M.determinant()) < 1e-12) continue;
      const Eigen::Vector2d v = M.inverse() * Eigen::Vector2d(q(i), q(j));
      if (((G * v - q).array() >= -1e-9).all()) best = std::min(best, c.dot(v));
    }
  }
  return best;
}

/// Searches the grid [−1, 1]^d (step 1/k) for x with (A x)_i ≥ 0 and
/// cᵀx ≤ −margin: brute force over the orthant alternative system.
inline bool brute_force_orthant_certificate(const Matrix& A, const Vector& c, int k,
                                            double margin) {
  const int d = static_cast<int>(A.cols());
  std::vector<int> idx(static_cast<std::size_t>(d), -k);
  Vector x(d);
  while (true) {
    for (int i = 0; i < d; ++i) x(i) = static_cast<double>(idx[static_cast<std::size_t>(i)]) / k;
    if (((A * x).array() >= -1e-12).all() && c.dot(x) <= -margin) return true;
    int p = 0;
    while (p < d && ++idx[static_cast<std::size_t>(p)] > k) idx[static_cast<std::size_t>(p++)] = -k;
    if (p == d) return false;
  }
}

inline Vector uniform_vector(std::mt19937_64& rng, Eigen::Index n, double lo = -1.0,
                             double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Matrix uniform_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c,
                             double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = u(rng);
  return m;
}

inline Vector gaussian_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

}  // namespace oracle
