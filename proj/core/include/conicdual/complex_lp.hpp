#pragma once

#include <vector>

#include "conicdual/duality.hpp"

namespace conicdual {

// Sector shape per cone. kSymmetric: |arg z| ≤ α. kUpper: 0 ≤ arg z ≤ α.
// kLower: −α ≤ arg z ≤ 0.
enum class SectorOrientation { kSymmetric, kUpper, kLower };

std::string_view to_string(SectorOrientation o);

// min Re(c,z) s.t. Az − b ∈ T*, z ∈ S over ℂ^m, with S, T argument cones.
struct ComplexLPSpec {
  ComplexMatrix A;  // n × m
  ComplexVector b;  // n
  ComplexVector c;  // m
  std::vector<double> alpha;  // m angles, each in (0, π/2)
  std::vector<double> beta;   // n angles, each in (0, π/2)
  SectorOrientation s_orientation = SectorOrientation::kSymmetric;
  SectorOrientation t_orientation = SectorOrientation::kSymmetric;
  bool game_slice = false;  // intersect both cones with Σ Im = 0

  void validate() const;
};

WedgeParams sector_params(const std::vector<double>& angles, SectorOrientation o);

/// Realified problem on ℝ^{2m} × ℝ^{2n} under the real-part pairing.
ConicProblem build_complex_lp(const ComplexLPSpec& spec);

/// Every nonzero entry has lo ≤ arg a_ij ≤ hi (1e−12 slack).
bool check_arg_condition(const ComplexMatrix& A, double lo, double hi);

struct AngleEntry {
  char side = 'z';   // 'z' primal optimizer, 'w' dual optimizer
  Eigen::Index index = 0;
  Complex value;
  double arg = 0.0;
  double lower = 0.0;  // sector bounds
  double upper = 0.0;
  double boundary_distance = 0.0;
  bool real = false;  // excluded from the angle assertion
  bool on_boundary = false;
};

struct BoundaryReport {
  FarkasBranch primal_system = FarkasBranch::kIndeterminate;
  FarkasBranch dual_system = FarkasBranch::kIndeterminate;
  bool characterization_applies = false;
  bool z_on_boundary = false;
  bool w_on_boundary = false;
  std::vector<AngleEntry> angles;
  std::string note;
  SolveReport solve;
};

inline constexpr double kRealCoordinateTol = 1e-9;

/// When both equality systems carry certificates and both optima exist,
/// each optimizer must avoid the interior of its cone: some coordinate sits
/// on a sector edge (or at 0). Throws TheoremViolation otherwise.
BoundaryReport classify_boundary_optima(const ComplexLPSpec& spec, double tol = 1e-6);

}  // namespace conicdual
