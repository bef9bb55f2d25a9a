#include "conicdual/residual.hpp"

#include <cmath>

#include "conicdual/nnls.hpp"

namespace conicdual {

ResidualResult residual_minimize(const Operator& A, const Vector& b, const Cone& S,
                                 const Pairing& p, double tol) {
  require_dim(b.size(), A.rows(), "b");
  require_dim(S.ambient_dim(), A.cols(), "S");
  require_finite(b, "b");
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive", "tol");
  }
  const Vector sqrt_w = p.gram_diagonal(A.rows()).cwiseSqrt();
  const Matrix image = A.matrix * S.generators();
  const Matrix m = sqrt_w.asDiagonal() * image;
  const Vector rhs = sqrt_w.cwiseProduct(b);

  const NnlsResult nnls = solve_nnls(m, rhs);
  ResidualResult out;
  out.preimage_u = nnls.u;
  out.preimage_x = S.generators() * nnls.u;
  out.minimizer_gamma = image * nnls.u;
  const Vector r = out.minimizer_gamma - b;
  out.value = pairing(p, r, r);
  out.iterations = nnls.iterations;
  out.kkt_residual = nnls.kkt_residual;
  return out;
}

bool variational_check(const Vector& gamma, const Vector& b,
                       std::span<const Vector> samples, const Pairing& p, double tol) {
  require_dim(b.size(), gamma.size(), "b");
  const Vector d = gamma - b;
  for (const Vector& x : samples) {
    if (pairing(p, d, x - gamma) < -tol) return false;
  }
  return true;
}

std::optional<Vector> separating_vector(const Operator& A, const Vector& b,
                                        const Cone& S, const Pairing& p,
                                        double tol) {
  const ResidualResult r = residual_minimize(A, b, S, p, tol);
  if (r.value <= tol * tol) return std::nullopt;
  return Vector(r.minimizer_gamma - b);
}

}  // namespace conicdual
