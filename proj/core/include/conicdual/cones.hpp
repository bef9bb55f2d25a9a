#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "conicdual/error.hpp"
#include "conicdual/linops.hpp"

namespace conicdual {

inline constexpr double kDefaultMembershipTol = 1e-9;

enum class ConeKind { kOrthant, kWedge, kGenerated, kProduct, kSlice };

std::string_view to_string(ConeKind kind);

/// Per-coordinate planar sectors {z : |arg z − centerᵢ| ≤ half_anglesᵢ}.
/// With all centers zero this is the argument cone |arg z| ≤ α.
struct WedgeParams {
  std::vector<double> half_angles;
  std::vector<double> centers;  // empty means all zero

  double center(std::size_t i) const { return centers.empty() ? 0.0 : centers[i]; }
  // Throws naming "half_angles[i]" unless 0 < αᵢ < π/2.
  void validate() const;
};

/// A finitely generated convex cone {G u : u ≥ 0}. Immutable; cheap to copy.
///
/// Slices are stored with both the original normals and the generators of
/// the intersection, obtained by exact pairwise ray combination per normal,
/// so every downstream routine sees a plain generator matrix.
class Cone {
 public:
  static Cone orthant(Eigen::Index dim);
  static Cone wedge(WedgeParams params);
  static Cone wedge(std::vector<double> half_angles);
  static Cone generated(Matrix generators);
  static Cone product(std::vector<Cone> blocks);
  // normals: ambient_dim × p, the slice is {v ∈ base : Nᵀv = 0}.
  static Cone slice(Cone base, Matrix normals);

  ConeKind kind() const;
  Eigen::Index ambient_dim() const;
  const Matrix& generators() const;
  const WedgeParams& wedge_params() const;
  const std::vector<Cone>& blocks() const;
  const Cone& base() const;
  const Matrix& slice_normals() const;
  // Inward unit facet normals as rows, when the cone is solid and generated.
  const std::optional<Matrix>& facets() const;
  bool solid() const;

 private:
  struct Data;
  explicit Cone(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> d_;
};

/// Euclidean distance from v to the cone (NNLS over the generators).
double distance(const Cone& cone, const Vector& v);

bool contains(const Cone& cone, const Vector& v, double tol = kDefaultMembershipTol);

/// Margin membership: true iff the tol-ball around v (relative to the slice
/// subspace for slices) lies in the cone. Strict, so 0 is never interior.
/// Throws kF1Violated for cones without interior.
bool interior_contains(const Cone& cone, const Vector& v, double tol);

/// Closed-form dual under the Euclidean pairing: orthant ↦ orthant,
/// sector half-angle α ↦ π/2 − α, products blockwise, solid generated cones
/// via facet normals, slices as base* + span(N).
Cone dual(const Cone& cone);

/// Dual under a diagonal pairing: W⁻¹ applied to the Euclidean dual.
Cone dual(const Cone& cone, const Pairing& pairing);

Matrix generators(const Cone& cone);

/// max(0, max_g −⟨ĝ, v⟩_p) over unit generators ĝ: the amount by which v
/// fails the inequalities defining the dual cone.
double dual_violation(const Cone& cone, const Vector& v, const Pairing& p);

bool dual_contains(const Cone& cone, const Vector& v, const Pairing& p,
                   double tol = kDefaultMembershipTol);

/// Mean of the unit generators; lies in the interior of any solid cone.
Vector interior_point(const Cone& cone);

}  // namespace conicdual
