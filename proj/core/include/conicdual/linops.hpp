#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "conicdual/error.hpp"

namespace conicdual {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Dense linear map X → Y. rows = dim Y, cols = dim X.
struct Operator {
  Matrix matrix;
  std::string label;

  Operator() = default;
  explicit Operator(Matrix m, std::string label = {});

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

enum class PairingKind { kEuclideanDot, kWeightedQuadrature, kComplexRealPart };

std::string_view to_string(PairingKind kind);

/// Bilinear symmetric positive-definite form ⟨u,v⟩ = Σ wᵢ uᵢ vᵢ.
///
/// kComplexRealPart lives on realified vectors (Re z₁, Im z₁, …) where
/// Re(Σ z̄ᵢ wᵢ) is exactly the Euclidean dot, so it carries unit weights.
struct Pairing {
  PairingKind kind = PairingKind::kEuclideanDot;
  Vector weights;  // only for kWeightedQuadrature

  static Pairing euclidean();
  static Pairing weighted(Vector weights);
  static Pairing complex_real_part();

  bool is_unit() const { return kind != PairingKind::kWeightedQuadrature; }
  // Diagonal of the Gram matrix at dimension n.
  Vector gram_diagonal(Eigen::Index n) const;
};

Vector apply(const Operator& op, const Vector& x);

/// Plain transpose action; the adjoint for unit-weight pairings.
Vector adjoint_apply(const Operator& op, const Vector& y);

/// Pairing adjoint A^T = W_X⁻¹ Aᵀ W_Y, so ⟨Ax,y⟩_Y = ⟨x,A^T y⟩_X exactly.
Vector adjoint_apply(const Operator& op, const Vector& y, const Pairing& px,
                     const Pairing& py);

/// Matrix of the pairing adjoint.
Matrix adjoint_matrix(const Operator& op, const Pairing& px, const Pairing& py);

double pairing(const Pairing& p, const Vector& u, const Vector& v);
double pairing_norm(const Pairing& p, const Vector& u);

/// ℂ^m → ℝ^{2m}, z ↦ (Re z₁, Im z₁, …). A complex entry p+qi becomes the
/// block [[p, −q], [q, p]]; conjugate transpose becomes block transpose.
struct ComplexEmbedding {
  Eigen::Index complex_dim = 0;

  Vector embed(const ComplexVector& z) const;
  ComplexVector unembed(const Vector& x) const;
  static Matrix embed_matrix(const ComplexMatrix& a);
  static double real_pairing(const ComplexVector& z, const ComplexVector& w);
};

ComplexEmbedding complex_embed(Eigen::Index m);

struct AdjointCheckReport {
  double max_residual = 0.0;
  int samples = 0;
  bool passed = false;
};

struct AdjointCheckOptions {
  int n_samples = 1000;
  double tol = 1e-12;
  std::uint64_t seed = 7;
  // 0: Gaussian samples. k > 0: vectors are read as consecutive blocks of
  // k values per grid node and filled from random low-frequency cosines.
  Eigen::Index smooth_block = 0;
};

/// max over samples of |⟨Ax,y⟩_Y − ⟨x,A^T y⟩_X| for the given adjoint matrix.
AdjointCheckReport adjoint_identity_check(const Operator& op,
                                          const Matrix& adjoint,
                                          const Pairing& px, const Pairing& py,
                                          const AdjointCheckOptions& options);

/// Same check with the pairing adjoint of `op`.
AdjointCheckReport adjoint_identity_check(const Operator& op,
                                          const Pairing& px, const Pairing& py,
                                          const AdjointCheckOptions& options);

}  // namespace conicdual
