#include "conicdual/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace conicdual {

Operator::Operator(Matrix m, std::string l) : matrix(std::move(m)), label(std::move(l)) {
  require_finite(matrix, label.empty() ? "operator" : label);
}

std::string_view to_string(PairingKind kind) {
  switch (kind) {
    case PairingKind::kEuclideanDot: return "euclidean_dot";
    case PairingKind::kWeightedQuadrature: return "weighted_quadrature";
    case PairingKind::kComplexRealPart: return "complex_real_part";
  }
  return "unknown";
}

Pairing Pairing::euclidean() { return {}; }

Pairing Pairing::weighted(Vector weights) {
  require_finite(weights, "weights");
  if (weights.size() == 0 || weights.minCoeff() <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "quadrature weights must be positive",
                "weights");
  }
  return {PairingKind::kWeightedQuadrature, std::move(weights)};
}

Pairing Pairing::complex_real_part() { return {PairingKind::kComplexRealPart, {}}; }

Vector Pairing::gram_diagonal(Eigen::Index n) const {
  if (is_unit()) return Vector::Ones(n);
  require_dim(weights.size(), n, "weights");
  return weights;
}

Vector apply(const Operator& op, const Vector& x) {
  require_dim(x.size(), op.cols(), "x");
  return op.matrix * x;
}

Vector adjoint_apply(const Operator& op, const Vector& y) {
  require_dim(y.size(), op.rows(), "y");
  return op.matrix.transpose() * y;
}

Vector adjoint_apply(const Operator& op, const Vector& y, const Pairing& px,
                     const Pairing& py) {
  require_dim(y.size(), op.rows(), "y");
  const Vector wy = py.gram_diagonal(op.rows());
  const Vector wx = px.gram_diagonal(op.cols());
  return (op.matrix.transpose() * wy.cwiseProduct(y)).cwiseQuotient(wx);
}

Matrix adjoint_matrix(const Operator& op, const Pairing& px, const Pairing& py) {
  const Vector wy = py.gram_diagonal(op.rows());
  const Vector wx = px.gram_diagonal(op.cols());
  return wx.cwiseInverse().asDiagonal() * op.matrix.transpose() * wy.asDiagonal();
}

double pairing(const Pairing& p, const Vector& u, const Vector& v) {
  require_dim(v.size(), u.size(), "pairing operand");
  if (p.is_unit()) return u.dot(v);
  require_dim(p.weights.size(), u.size(), "weights");
  // u_i v_i first, so swapping u and v gives bit-identical results
  return (p.weights.array() * (u.array() * v.array())).sum();
}

double pairing_norm(const Pairing& p, const Vector& u) {
  return std::sqrt(std::max(pairing(p, u, u), 0.0));
}

Vector ComplexEmbedding::embed(const ComplexVector& z) const {
  require_dim(z.size(), complex_dim, "complex vector");
  Vector x(2 * z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    x(2 * i) = z(i).real();
    x(2 * i + 1) = z(i).imag();
  }
  return x;
}

ComplexVector ComplexEmbedding::unembed(const Vector& x) const {
  require_dim(x.size(), 2 * complex_dim, "real embedding");
  ComplexVector z(complex_dim);
  for (Eigen::Index i = 0; i < complex_dim; ++i) z(i) = Complex(x(2 * i), x(2 * i + 1));
  return z;
}

Matrix ComplexEmbedding::embed_matrix(const ComplexMatrix& a) {
  Matrix r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double p = a(i, j).real();
      const double q = a(i, j).imag();
      r(2 * i, 2 * j) = p;
      r(2 * i, 2 * j + 1) = -q;
      r(2 * i + 1, 2 * j) = q;
      r(2 * i + 1, 2 * j + 1) = p;
    }
  }
  return r;
}

double ComplexEmbedding::real_pairing(const ComplexVector& z, const ComplexVector& w) {
  require_dim(w.size(), z.size(), "complex pairing");
  return z.dot(w).real();  // Eigen's dot conjugates the left operand
}

ComplexEmbedding complex_embed(Eigen::Index m) {
  if (m < 1) {
    throw Error(ErrorCode::kInvalidArgument, "complex dimension must be ≥ 1", "m");
  }
  return {m};
}

namespace {

Vector draw_sample(Eigen::Index n, Eigen::Index block, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  if (block <= 0) {
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
    return v;
  }
  const Eigen::Index nodes = n / block;
  require_dim(nodes * block, n, "smooth sample length");
  for (Eigen::Index comp = 0; comp < block; ++comp) {
    const double a0 = normal(rng), a1 = normal(rng), a2 = normal(rng);
    for (Eigen::Index k = 0; k < nodes; ++k) {
      const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(nodes);
      v(k * block + comp) = a0 + a1 * std::cos(std::numbers::pi * t) +
                            a2 * std::cos(2.0 * std::numbers::pi * t);
    }
  }
  return v;
}

}  // namespace

AdjointCheckReport adjoint_identity_check(const Operator& op,
                                          const Matrix& adjoint,
                                          const Pairing& px, const Pairing& py,
                                          const AdjointCheckOptions& options) {
  require_dim(adjoint.rows(), op.cols(), "adjoint rows");
  require_dim(adjoint.cols(), op.rows(), "adjoint cols");
  std::mt19937_64 rng(options.seed);
  AdjointCheckReport report;
  const Eigen::Index bx = options.smooth_block;
  // Y-side blocks follow the same node count as the X side.
  Eigen::Index by = 0;
  if (bx > 0) {
    const Eigen::Index nodes = op.cols() / bx;
    by = nodes > 0 ? op.rows() / nodes : 0;
  }
  for (int s = 0; s < options.n_samples; ++s) {
    const Vector x = draw_sample(op.cols(), bx, rng);
    const Vector y = draw_sample(op.rows(), by, rng);
    const double lhs = pairing(py, op.matrix * x, y);
    const double rhs = pairing(px, x, adjoint * y);
    report.max_residual = std::max(report.max_residual, std::abs(lhs - rhs));
  }
  report.samples = options.n_samples;
  report.passed = report.max_residual <= options.tol;
  return report;
}

AdjointCheckReport adjoint_identity_check(const Operator& op,
                                          const Pairing& px, const Pairing& py,
                                          const AdjointCheckOptions& options) {
  return adjoint_identity_check(op, adjoint_matrix(op, px, py), px, py, options);
}

}  // namespace conicdual
