#include "conicdual/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "conicdual/nnls.hpp"

namespace conicdual {

std::string_view to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::kOrthant: return "orthant";
    case ConeKind::kWedge: return "wedge";
    case ConeKind::kGenerated: return "generated";
    case ConeKind::kProduct: return "product";
    case ConeKind::kSlice: return "slice";
  }
  return "unknown";
}

void WedgeParams::validate() const {
  if (half_angles.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one half-angle required",
                "half_angles");
  }
  if (!centers.empty() && centers.size() != half_angles.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "centers must match half_angles in length", "centers");
  }
  for (std::size_t i = 0; i < half_angles.size(); ++i) {
    const double a = half_angles[i];
    if (!std::isfinite(a) || a <= 0.0 || a >= std::numbers::pi / 2) {
      std::ostringstream msg;
      msg << "half-angle " << a << " outside the open interval (0, pi/2)";
      throw Error(ErrorCode::kInvalidArgument, msg.str(),
                  "half_angles[" + std::to_string(i) + "]");
    }
    if (!std::isfinite(center(i))) {
      throw Error(ErrorCode::kNonFinite, "center angle is not finite",
                  "centers[" + std::to_string(i) + "]");
    }
  }
}

struct Cone::Data {
  ConeKind kind = ConeKind::kOrthant;
  Eigen::Index dim = 0;
  Matrix generators;
  WedgeParams wedge;
  std::vector<Cone> blocks;
  std::shared_ptr<const Cone> base;
  Matrix normals;
  std::optional<Matrix> facets;
  bool solid = false;
};

Cone::Cone(std::shared_ptr<const Data> data) : d_(std::move(data)) {}

namespace {

Matrix normalize_columns(const Matrix& g) {
  Matrix out = g;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double n = out.col(j).norm();
    if (n > 0.0) out.col(j) /= n;
  }
  return out;
}

// Drop near-parallel duplicates of unit columns.
Matrix dedupe_unit_columns(const Matrix& g) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    bool dup = false;
    for (Eigen::Index k : keep) {
      if (g.col(j).dot(g.col(k)) > 1.0 - 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(j);
  }
  Matrix out(g.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) out.col(k) = g.col(keep[k]);
  return out;
}

double binomial(Eigen::Index n, Eigen::Index k) {
  double r = 1.0;
  for (Eigen::Index i = 1; i <= k; ++i) {
    r *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

// Facets of a full-dimensional cone(G) by enumerating (n−1)-subsets of
// generators whose span is a hyperplane supporting every generator.
std::optional<Matrix> enumerate_facets(const Matrix& g_raw) {
  const Eigen::Index n = g_raw.rows();
  const Eigen::Index k = g_raw.cols();
  if (k == 0) return std::nullopt;
  const Matrix g = normalize_columns(g_raw);
  Eigen::FullPivLU<Matrix> lu(g);
  if (lu.rank() < n) return std::nullopt;

  std::vector<Vector> facets;
  auto add_candidate = [&](Vector h) {
    const double hn = h.norm();
    if (hn < 1e-12) return;
    h /= hn;
    const Vector s = g.transpose() * h;
    const double tol = 1e-10;
    if (s.minCoeff() >= -tol) {
      // keep h
    } else if (s.maxCoeff() <= tol) {
      h = -h;
    } else {
      return;
    }
    for (const Vector& f : facets) {
      if (f.dot(h) > 1.0 - 1e-10) return;
    }
    facets.push_back(h);
  };

  if (n == 1) {
    add_candidate(Vector::Ones(1));
  } else {
    if (binomial(k, n - 1) > 2e5) return std::nullopt;
    std::vector<Eigen::Index> idx(n - 1);
    for (Eigen::Index i = 0; i < n - 1; ++i) idx[i] = i;
    while (true) {
      Matrix sub(n, n - 1);
      for (Eigen::Index i = 0; i < n - 1; ++i) sub.col(i) = g.col(idx[i]);
      Eigen::JacobiSVD<Matrix> svd(sub.transpose(), Eigen::ComputeFullV);
      const Vector sv = svd.singularValues();
      if (sv.size() == n - 1 && sv(n - 2) > 1e-10 * std::max(1.0, sv(0))) {
        add_candidate(svd.matrixV().col(n - 1));
      }
      // next combination
      Eigen::Index pos = n - 2;
      while (pos >= 0 && idx[pos] == k - (n - 1) + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (Eigen::Index i = pos + 1; i < n - 1; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  Matrix out(static_cast<Eigen::Index>(facets.size()), n);
  for (std::size_t i = 0; i < facets.size(); ++i) out.row(i) = facets[i].transpose();
  return out;
}

Matrix block_diagonal(const std::vector<Cone>& blocks, Eigen::Index dim) {
  Eigen::Index cols = 0;
  for (const Cone& b : blocks) cols += b.generators().cols();
  Matrix g = Matrix::Zero(dim, cols);
  Eigen::Index r = 0, c = 0;
  for (const Cone& b : blocks) {
    g.block(r, c, b.ambient_dim(), b.generators().cols()) = b.generators();
    r += b.ambient_dim();
    c += b.generators().cols();
  }
  return g;
}

// One step of ray combination: generators of cone(R) ∩ {v : nᵀv = 0}.
Matrix intersect_hyperplane(const Matrix& rays, const Vector& normal) {
  std::vector<Vector> out;
  std::vector<Eigen::Index> pos, neg;
  const double nn = normal.norm();
  for (Eigen::Index j = 0; j < rays.cols(); ++j) {
    const double e = normal.dot(rays.col(j));
    const double tol = 1e-12 * nn * std::max(1.0, rays.col(j).norm());
    if (std::abs(e) <= tol) {
      out.push_back(rays.col(j));
    } else if (e > 0) {
      pos.push_back(j);
    } else {
      neg.push_back(j);
    }
  }
  for (Eigen::Index p : pos) {
    for (Eigen::Index q : neg) {
      const double ep = normal.dot(rays.col(p));
      const double eq = normal.dot(rays.col(q));
      Vector r = ep * rays.col(q) - eq * rays.col(p);
      // Cancel the residual component along the normal.
      r -= (normal.dot(r) / (nn * nn)) * normal;
      if (r.norm() > 1e-14) out.push_back(r);
    }
  }
  Matrix m(rays.rows(), static_cast<Eigen::Index>(out.size()));
  for (std::size_t j = 0; j < out.size(); ++j) m.col(j) = out[j];
  return dedupe_unit_columns(normalize_columns(m));
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

}  // namespace

Cone Cone::orthant(Eigen::Index dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be ≥ 1", "dim");
  auto d = std::make_shared<Data>();
  d->kind = ConeKind::kOrthant;
  d->dim = dim;
  d->generators = Matrix::Identity(dim, dim);
  d->solid = true;
  return Cone(std::move(d));
}

Cone Cone::wedge(WedgeParams params) {
  params.validate();
  auto d = std::make_shared<Data>();
  const auto m = static_cast<Eigen::Index>(params.half_angles.size());
  d->kind = ConeKind::kWedge;
  d->dim = 2 * m;
  d->generators = Matrix::Zero(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double c = params.center(static_cast<std::size_t>(i));
    const double h = params.half_angles[static_cast<std::size_t>(i)];
    d->generators(2 * i, 2 * i) = std::cos(c + h);
    d->generators(2 * i + 1, 2 * i) = std::sin(c + h);
    d->generators(2 * i, 2 * i + 1) = std::cos(c - h);
    d->generators(2 * i + 1, 2 * i + 1) = std::sin(c - h);
  }
  d->wedge = std::move(params);
  d->solid = true;
  return Cone(std::move(d));
}

Cone Cone::wedge(std::vector<double> half_angles) {
  return wedge(WedgeParams{std::move(half_angles), {}});
}

Cone Cone::generated(Matrix generators) {
  if (generators.rows() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "ambient dimension must be ≥ 1", "generators");
  }
  require_finite(generators, "generators");
  for (Eigen::Index j = 0; j < generators.cols(); ++j) {
    if (generators.col(j).norm() == 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "generator column is zero",
                  "generators[" + std::to_string(j) + "]");
    }
  }
  auto d = std::make_shared<Data>();
  d->kind = ConeKind::kGenerated;
  d->dim = generators.rows();
  d->facets = enumerate_facets(generators);
  d->solid = generators.cols() > 0 &&
             Eigen::FullPivLU<Matrix>(generators).rank() == generators.rows();
  d->generators = std::move(generators);
  return Cone(std::move(d));
}

Cone Cone::product(std::vector<Cone> blocks) {
  if (blocks.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "product needs at least one block", "components");
  }
  auto d = std::make_shared<Data>();
  d->kind = ConeKind::kProduct;
  d->solid = true;
  for (const Cone& b : blocks) {
    d->dim += b.ambient_dim();
    d->solid = d->solid && b.solid();
  }
  d->generators = block_diagonal(blocks, d->dim);
  d->blocks = std::move(blocks);
  return Cone(std::move(d));
}

Cone Cone::slice(Cone base, Matrix normals) {
  require_dim(normals.rows(), base.ambient_dim(), "slice_normals");
  require_finite(normals, "slice_normals");
  auto d = std::make_shared<Data>();
  d->kind = ConeKind::kSlice;
  d->dim = base.ambient_dim();
  Matrix rays = normalize_columns(base.generators());
  for (Eigen::Index j = 0; j < normals.cols(); ++j) {
    if (normals.col(j).norm() == 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "slice normal is zero",
                  "slice_normals[" + std::to_string(j) + "]");
    }
    rays = intersect_hyperplane(rays, normals.col(j));
  }
  d->generators = rays;
  d->normals = std::move(normals);
  d->base = std::make_shared<const Cone>(std::move(base));
  // Relative solidity: the slice meets the interior of its base.
  bool solid = false;
  if (d->base->solid() && rays.cols() > 0) {
    const Vector p = rays.rowwise().mean();
    solid = interior_contains(*d->base, p, 0.0);
  }
  d->solid = solid;
  return Cone(std::move(d));
}

ConeKind Cone::kind() const { return d_->kind; }
Eigen::Index Cone::ambient_dim() const { return d_->dim; }
const Matrix& Cone::generators() const { return d_->generators; }
const WedgeParams& Cone::wedge_params() const {
  if (d_->kind != ConeKind::kWedge) {
    throw Error(ErrorCode::kInvalidArgument, "cone is not a wedge", "kind");
  }
  return d_->wedge;
}
const std::vector<Cone>& Cone::blocks() const { return d_->blocks; }
const Cone& Cone::base() const {
  if (!d_->base) throw Error(ErrorCode::kInvalidArgument, "cone is not a slice", "kind");
  return *d_->base;
}
const Matrix& Cone::slice_normals() const { return d_->normals; }
const std::optional<Matrix>& Cone::facets() const { return d_->facets; }
bool Cone::solid() const { return d_->solid; }

double distance(const Cone& cone, const Vector& v) {
  require_dim(v.size(), cone.ambient_dim(), "v");
  require_finite(v, "v");
  switch (cone.kind()) {
    case ConeKind::kOrthant:
      return v.cwiseMin(0.0).norm();
    case ConeKind::kProduct: {
      double sq = 0.0;
      Eigen::Index r = 0;
      for (const Cone& b : cone.blocks()) {
        const double db = distance(b, v.segment(r, b.ambient_dim()));
        sq += db * db;
        r += b.ambient_dim();
      }
      return std::sqrt(sq);
    }
    default: {
      const Matrix& g = cone.generators();
      if (g.cols() == 0) return v.norm();
      const NnlsResult res = solve_nnls(g, v);
      return (g * res.u - v).norm();
    }
  }
}

bool contains(const Cone& cone, const Vector& v, double tol) {
  if (!(tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be nonnegative", "tol");
  }
  return distance(cone, v) <= tol;
}

bool interior_contains(const Cone& cone, const Vector& v, double tol) {
  require_dim(v.size(), cone.ambient_dim(), "v");
  require_finite(v, "v");
  if (!cone.solid()) {
    throw Error(ErrorCode::kF1Violated, "cone has empty interior", "cone");
  }
  switch (cone.kind()) {
    case ConeKind::kOrthant:
      return v.minCoeff() > tol;
    case ConeKind::kWedge: {
      const WedgeParams& w = cone.wedge_params();
      for (std::size_t i = 0; i < w.half_angles.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const double x = v(2 * k), y = v(2 * k + 1);
        const double r = std::hypot(x, y);
        if (!(r > tol)) return false;
        const double off = std::abs(wrap_angle(std::atan2(y, x) - w.center(i)));
        if (!(off < w.half_angles[i] - tol)) return false;
      }
      return true;
    }
    case ConeKind::kProduct: {
      Eigen::Index r = 0;
      for (const Cone& b : cone.blocks()) {
        if (!interior_contains(b, v.segment(r, b.ambient_dim()), tol)) return false;
        r += b.ambient_dim();
      }
      return true;
    }
    case ConeKind::kGenerated: {
      if (!cone.facets()) {
        throw Error(ErrorCode::kUnsupported,
                    "facet enumeration too large for interior test", "generators");
      }
      const Matrix& f = *cone.facets();
      if (f.rows() == 0) return true;  // the whole space
      return (f * v).minCoeff() > tol;
    }
    case ConeKind::kSlice: {
      const Matrix& n = cone.slice_normals();
      for (Eigen::Index j = 0; j < n.cols(); ++j) {
        const double off = std::abs(n.col(j).dot(v)) / n.col(j).norm();
        if (off > 1e-9 * (1.0 + v.norm())) return false;
      }
      return interior_contains(cone.base(), v, tol);
    }
  }
  return false;
}

Cone dual(const Cone& cone) {
  switch (cone.kind()) {
    case ConeKind::kOrthant:
      return Cone::orthant(cone.ambient_dim());
    case ConeKind::kWedge: {
      WedgeParams w = cone.wedge_params();
      for (double& a : w.half_angles) a = std::numbers::pi / 2 - a;
      return Cone::wedge(std::move(w));
    }
    case ConeKind::kProduct: {
      std::vector<Cone> blocks;
      for (const Cone& b : cone.blocks()) blocks.push_back(dual(b));
      return Cone::product(std::move(blocks));
    }
    case ConeKind::kGenerated: {
      if (!cone.solid() || !cone.facets() || cone.facets()->rows() == 0) {
        throw Error(ErrorCode::kUnsupported,
                    "dual of a non-solid or unbounded generated cone", "generated");
      }
      return Cone::generated(cone.facets()->transpose());
    }
    case ConeKind::kSlice: {
      const Cone base_dual = dual(cone.base());
      const Matrix& n = cone.slice_normals();
      const Matrix& g = base_dual.generators();
      Matrix all(cone.ambient_dim(), g.cols() + 2 * n.cols());
      all << g, n, -n;
      return Cone::generated(std::move(all));
    }
  }
  throw Error(ErrorCode::kUnsupported, "unsupported cone kind", "kind");
}

Cone dual(const Cone& cone, const Pairing& pairing) {
  if (pairing.is_unit()) return dual(cone);
  const Vector w = pairing.gram_diagonal(cone.ambient_dim());
  switch (cone.kind()) {
    case ConeKind::kOrthant:
      return Cone::orthant(cone.ambient_dim());
    case ConeKind::kProduct: {
      std::vector<Cone> blocks;
      Eigen::Index r = 0;
      for (const Cone& b : cone.blocks()) {
        blocks.push_back(dual(b, Pairing::weighted(w.segment(r, b.ambient_dim()))));
        r += b.ambient_dim();
      }
      return Cone::product(std::move(blocks));
    }
    case ConeKind::kWedge: {
      bool uniform_pairs = true;
      for (Eigen::Index i = 0; i + 1 < w.size(); i += 2) {
        uniform_pairs = uniform_pairs && w(i) == w(i + 1);
      }
      if (uniform_pairs) return dual(cone);
      break;
    }
    default:
      break;
  }
  const Cone euclid = dual(cone);
  return Cone::generated(w.cwiseInverse().asDiagonal() * euclid.generators());
}

Matrix generators(const Cone& cone) { return cone.generators(); }

double dual_violation(const Cone& cone, const Vector& v, const Pairing& p) {
  require_dim(v.size(), cone.ambient_dim(), "v");
  require_finite(v, "v");
  const Matrix& g = cone.generators();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const double gn = g.col(j).norm();
    worst = std::max(worst, -pairing(p, g.col(j), v) / gn);
  }
  return worst;
}

bool dual_contains(const Cone& cone, const Vector& v, const Pairing& p, double tol) {
  return dual_violation(cone, v, p) <= tol;
}

Vector interior_point(const Cone& cone) {
  const Matrix g = normalize_columns(cone.generators());
  if (g.cols() == 0) return Vector::Zero(cone.ambient_dim());
  return g.rowwise().mean();
}

}  // namespace conicdual
