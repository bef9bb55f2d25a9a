#include "conicdual/complex_lp.hpp"

#include <cmath>
#include <numbers>

namespace conicdual {

std::string_view to_string(SectorOrientation o) {
  switch (o) {
    case SectorOrientation::kSymmetric: return "symmetric";
    case SectorOrientation::kUpper: return "upper";
    case SectorOrientation::kLower: return "lower";
  }
  return "unknown";
}

namespace {

void check_angles(const std::vector<double>& angles, const char* name) {
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double a = angles[i];
    if (!std::isfinite(a) || !(a > 0.0) || !(a < std::numbers::pi / 2)) {
      throw Error(ErrorCode::kInvalidArgument, "angle must lie in (0, pi/2)",
                  std::string(name) + "[" + std::to_string(i) + "]");
    }
  }
}

Cone sector_cone(const std::vector<double>& angles, SectorOrientation o, bool game) {
  Cone base = Cone::wedge(sector_params(angles, o));
  if (!game) return base;
  const auto m = static_cast<Eigen::Index>(angles.size());
  Matrix normal = Matrix::Zero(2 * m, 1);
  for (Eigen::Index i = 0; i < m; ++i) normal(2 * i + 1, 0) = 1.0;
  return Cone::slice(std::move(base), std::move(normal));
}

double wrap(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

void tabulate(const Vector& real, char side, const WedgeParams& w, double tol,
              BoundaryReport& report, bool& any_boundary) {
  const ComplexVector z = complex_embed(real.size() / 2).unembed(real);
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    AngleEntry e;
    e.side = side;
    e.index = i;
    e.value = z(i);
    e.arg = std::arg(z(i));
    const auto k = static_cast<std::size_t>(i);
    e.lower = w.center(k) - w.half_angles[k];
    e.upper = w.center(k) + w.half_angles[k];
    e.boundary_distance = std::min(std::abs(wrap(e.arg - e.lower)),
                                   std::abs(wrap(e.arg - e.upper)));
    e.real = std::abs(z(i).imag()) < kRealCoordinateTol;
    e.on_boundary = std::abs(z(i)) <= tol || e.boundary_distance <= tol;
    any_boundary = any_boundary || e.on_boundary;
    report.angles.push_back(e);
  }
}

}  // namespace

void ComplexLPSpec::validate() const {
  require_finite(Matrix(A.real()), "A");
  require_finite(Matrix(A.imag()), "A");
  require_dim(b.size(), A.rows(), "b");
  require_dim(c.size(), A.cols(), "c");
  require_dim(static_cast<Eigen::Index>(alpha.size()), A.cols(), "alpha");
  require_dim(static_cast<Eigen::Index>(beta.size()), A.rows(), "beta");
  check_angles(alpha, "alpha");
  check_angles(beta, "beta");
}

WedgeParams sector_params(const std::vector<double>& angles, SectorOrientation o) {
  WedgeParams w;
  for (double a : angles) {
    switch (o) {
      case SectorOrientation::kSymmetric:
        w.half_angles.push_back(a);
        w.centers.push_back(0.0);
        break;
      case SectorOrientation::kUpper:
        w.half_angles.push_back(a / 2);
        w.centers.push_back(a / 2);
        break;
      case SectorOrientation::kLower:
        w.half_angles.push_back(a / 2);
        w.centers.push_back(-a / 2);
        break;
    }
  }
  return w;
}

ConicProblem build_complex_lp(const ComplexLPSpec& spec) {
  spec.validate();
  const ComplexEmbedding ex = complex_embed(spec.A.cols());
  const ComplexEmbedding ey = complex_embed(spec.A.rows());
  ConicProblem pb(Operator(ComplexEmbedding::embed_matrix(spec.A), "A"),
                  ey.embed(spec.b), ex.embed(spec.c),
                  sector_cone(spec.alpha, spec.s_orientation, spec.game_slice),
                  sector_cone(spec.beta, spec.t_orientation, spec.game_slice),
                  Pairing::complex_real_part(), Pairing::complex_real_part());
  pb.validate();
  return pb;
}

bool check_arg_condition(const ComplexMatrix& A, double lo, double hi) {
  constexpr double slack = 1e-12;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const Complex a = A(i, j);
      if (a == Complex(0.0, 0.0)) continue;
      const double t = std::arg(a);
      if (t < lo - slack || t > hi + slack) return false;
    }
  }
  return true;
}

BoundaryReport classify_boundary_optima(const ComplexLPSpec& spec, double tol) {
  const ConicProblem pb = build_complex_lp(spec);
  BoundaryReport report;
  report.solve = solve(pb);
  report.primal_system =
      farkas_primal(pb.A, pb.b, pb.S, pb.pairing_X, pb.pairing_Y).branch;
  report.dual_system = farkas_dual(pb.A, pb.c, pb.T, pb.pairing_X, pb.pairing_Y).branch;

  if (report.primal_system == FarkasBranch::kSolution ||
      report.dual_system == FarkasBranch::kSolution) {
    report.note = "systems solvable, characterization vacuous";
    return report;
  }
  if (report.primal_system != FarkasBranch::kCertificate ||
      report.dual_system != FarkasBranch::kCertificate) {
    report.note = "indeterminate Farkas decision";
    return report;
  }
  if (!report.solve.x_star || !report.solve.y_star) {
    report.note = "no finite optima";
    return report;
  }

  report.characterization_applies = true;
  const WedgeParams ws = sector_params(spec.alpha, spec.s_orientation);
  const WedgeParams wt = sector_params(spec.beta, spec.t_orientation);
  tabulate(*report.solve.x_star, 'z', ws, tol, report, report.z_on_boundary);
  tabulate(*report.solve.y_star, 'w', wt, tol, report, report.w_on_boundary);
  if (!report.z_on_boundary || !report.w_on_boundary) {
    report.note = "optimizer interior although both systems are insoluble";
    report.solve.notes.push_back(report.note);
    throw TheoremViolation(report.note, report.solve);
  }
  report.note = "optimizers on the cone boundary";
  return report;
}

}  // namespace conicdual
