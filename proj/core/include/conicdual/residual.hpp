#pragma once

#include <optional>
#include <span>

#include "conicdual/cones.hpp"
#include "conicdual/linops.hpp"

namespace conicdual {

inline constexpr double kDefaultFeasibilityTol = 1e-8;

struct ResidualResult {
  Vector minimizer_gamma;  // γ ∈ C_A = {Ax : x ∈ S}
  Vector preimage_u;       // γ = A·G_S·u, u ≥ 0
  Vector preimage_x;       // x = G_S·u ∈ S
  double value = 0.0;      // ⟨γ − b, γ − b⟩
  int iterations = 0;
  double kkt_residual = 0.0;
};

/// Minimizes ⟨z,z⟩ over z ∈ {Ax − b : x ∈ S} as a nonnegative least
/// squares problem in the generator coefficients of S.
ResidualResult residual_minimize(const Operator& A, const Vector& b, const Cone& S,
                                 const Pairing& p = Pairing::euclidean(),
                                 double tol = kDefaultFeasibilityTol);

/// ⟨γ − b, x − γ⟩ ≥ −tol for every sample x (members of C_A).
bool variational_check(const Vector& gamma, const Vector& b,
                       std::span<const Vector> samples, const Pairing& p, double tol);

/// α = γ − b with ⟨α,b⟩ < ⟨α,Ax⟩ for all x ∈ S, or nullopt when b lies in
/// C_A to within tol (residual value ≤ tol²).
std::optional<Vector> separating_vector(const Operator& A, const Vector& b,
                                        const Cone& S,
                                        const Pairing& p = Pairing::euclidean(),
                                        double tol = kDefaultFeasibilityTol);

}  // namespace conicdual
