#include <cmath>
#include <fstream>
#include <limits>

#include "conicdual/cli.hpp"

namespace conicdual::cli {

namespace {

const Json& at(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kParse, "missing field", path.empty() ? key : path + "." + key);
  }
  return j.at(key);
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

double get_double(const Json& j, const std::string& field) {
  if (!j.is_number()) throw Error(ErrorCode::kParse, "expected a number", field);
  return j.get<double>();
}

Eigen::Index get_index(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw Error(ErrorCode::kParse, "expected an integer", field);
  const auto v = j.get<long long>();
  if (v < 0) throw Error(ErrorCode::kParse, "expected a nonnegative integer", field);
  return static_cast<Eigen::Index>(v);
}

Vector get_vector(const Json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "expected an array", field);
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        get_double(j[i], field + "[" + std::to_string(i) + "]");
  }
  require_finite(v, field);
  return v;
}

std::vector<double> get_list(const Json& j, const std::string& field) {
  const Vector v = get_vector(j, field);
  return {v.data(), v.data() + v.size()};
}

Complex get_complex(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::kParse, "expected a [re, im] pair", field);
  }
  return {get_double(j[0], field), get_double(j[1], field)};
}

ComplexVector get_complex_vector(const Json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "expected an array", field);
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = get_complex(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

// Columns given as a list of equal-length arrays.
Matrix get_columns(const Json& j, Eigen::Index dim, const std::string& field) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::kParse, "expected columns", field);
  Matrix m(dim, static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    const Vector col = get_vector(j[k], f);
    require_dim(col.size(), dim, f);
    m.col(static_cast<Eigen::Index>(k)) = col;
  }
  return m;
}

ComplexMatrix parse_complex_matrix(const Json& j, const std::string& path) {
  const Eigen::Index rows = get_index(at(j, "rows", path), join(path, "rows"));
  const Eigen::Index cols = get_index(at(j, "cols", path), join(path, "cols"));
  const Json& data = at(j, "data", path);
  const std::string f = join(path, "data");
  if (!data.is_array()) throw Error(ErrorCode::kParse, "expected an array", f);
  require_dim(static_cast<Eigen::Index>(data.size()), rows * cols, f);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = get_complex(data[k], f + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

Operator parse_operator_at(const Json& j, const std::string& path) {
  if (j.value("complex", false)) {
    return Operator(ComplexEmbedding::embed_matrix(parse_complex_matrix(j, path)), path);
  }
  const Eigen::Index rows = get_index(at(j, "rows", path), join(path, "rows"));
  const Eigen::Index cols = get_index(at(j, "cols", path), join(path, "cols"));
  const std::string f = join(path, "data");
  const Vector data = get_vector(at(j, "data", path), f);
  require_dim(data.size(), rows * cols, f);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data(r * cols + c);
  }
  return Operator(std::move(m), path);
}

Cone parse_cone_at(const Json& j, const std::string& path) {
  const Json& kind_j = at(j, "kind", path);
  if (!kind_j.is_string()) throw Error(ErrorCode::kParse, "expected a string", join(path, "kind"));
  const std::string kind = kind_j.get<std::string>();
  if (kind == "orthant") {
    return Cone::orthant(get_index(at(j, "dim", path), join(path, "dim")));
  }
  if (kind == "wedge") {
    WedgeParams w;
    w.half_angles = get_list(at(j, "half_angles", path), join(path, "half_angles"));
    if (j.contains("centers")) {
      w.centers = get_list(j.at("centers"), join(path, "centers"));
      require_dim(static_cast<Eigen::Index>(w.centers.size()),
                  static_cast<Eigen::Index>(w.half_angles.size()), join(path, "centers"));
    }
    if (j.contains("dim")) {
      require_dim(get_index(j.at("dim"), join(path, "dim")),
                  2 * static_cast<Eigen::Index>(w.half_angles.size()), join(path, "dim"));
    }
    return Cone::wedge(std::move(w));
  }
  if (kind == "generated") {
    const Eigen::Index dim = get_index(at(j, "dim", path), join(path, "dim"));
    return Cone::generated(get_columns(at(j, "generators", path), dim, join(path, "generators")));
  }
  if (kind == "product") {
    const Json& comps = at(j, "components", path);
    if (!comps.is_array() || comps.empty()) {
      throw Error(ErrorCode::kParse, "expected a nonempty array", join(path, "components"));
    }
    std::vector<Cone> blocks;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      blocks.push_back(parse_cone_at(comps[i], join(path, "components") + "[" +
                                                   std::to_string(i) + "]"));
    }
    return Cone::product(std::move(blocks));
  }
  if (kind == "slice") {
    Cone base = parse_cone_at(at(j, "base", path), join(path, "base"));
    Matrix normals = get_columns(at(j, "slice_normals", path), base.ambient_dim(),
                                 join(path, "slice_normals"));
    return Cone::slice(std::move(base), std::move(normals));
  }
  throw Error(ErrorCode::kParse, "unknown cone kind '" + kind + "'", join(path, "kind"));
}

Pairing parse_pairing_at(const Json& j, const std::string& path) {
  const std::string kind = at(j, "kind", path).get<std::string>();
  if (kind == "euclidean_dot") return Pairing::euclidean();
  if (kind == "complex_real_part") return Pairing::complex_real_part();
  if (kind == "weighted_quadrature") {
    return Pairing::weighted(get_vector(at(j, "weights", path), join(path, "weights")));
  }
  throw Error(ErrorCode::kParse, "unknown pairing kind '" + kind + "'", join(path, "kind"));
}

SectorOrientation parse_orientation(const Json& j, const char* key) {
  if (!j.contains(key)) return SectorOrientation::kSymmetric;
  const std::string v = j.at(key).get<std::string>();
  if (v == "symmetric") return SectorOrientation::kSymmetric;
  if (v == "upper") return SectorOrientation::kUpper;
  if (v == "lower") return SectorOrientation::kLower;
  throw Error(ErrorCode::kParse, "unknown orientation '" + v + "'", key);
}

// Grid functions pick the sample of the cell containing t.
std::size_t cell(double t, double h, std::size_t n) {
  const double k = std::floor(t / h);
  if (k < 0.0) return 0;
  return std::min(static_cast<std::size_t>(k), n - 1);
}

Matrix reshape(const Vector& flat, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = flat(r * cols + c);
  }
  return m;
}

using SampleFn = std::function<Matrix(double, double)>;

// Parses {"kind": constant|causal_constant|grid|affine|causal_affine, ...}
// into a function of (s, t); single-argument callers pass s = t.
SampleFn parse_function(const Json& j, Eigen::Index rows, Eigen::Index cols,
                        const ContinuousLPSpec& spec, const std::string& path) {
  const std::string kind = at(j, "kind", path).get<std::string>();
  const Eigen::Index size = rows * cols;
  auto flat = [&](const char* key) {
    const std::string f = join(path, key);
    const Vector v = get_vector(at(j, key, path), f);
    require_dim(v.size(), size, f);
    return reshape(v, rows, cols);
  };
  if (kind == "constant") {
    const Matrix v = flat("data");
    return [v](double, double) { return v; };
  }
  if (kind == "causal_constant") {
    const Matrix v = flat("data");
    return [v](double s, double t) { return s > t ? Matrix(Matrix::Zero(v.rows(), v.cols())) : v; };
  }
  if (kind == "affine") {
    const Matrix a = flat("data"), slope = flat("slope");
    return [a, slope](double, double t) { return Matrix(a + t * slope); };
  }
  if (kind == "causal_affine") {
    const Matrix a = flat("data"), slope = flat("slope");
    return [a, slope](double s, double t) {
      return s > t ? Matrix(Matrix::Zero(a.rows(), a.cols())) : Matrix(a + (t - s) * slope);
    };
  }
  if (kind == "grid") {
    const Json& data = at(j, "data", path);
    const std::string f = join(path, "data");
    const auto n = static_cast<std::size_t>(spec.n_grid);
    const double h = spec.horizon / spec.n_grid;
    if (!data.is_array() || data.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "expected one entry per grid node", f);
    }
    const bool kernel = j.value("kernel", false);
    std::vector<std::vector<Matrix>> table(n);
    for (std::size_t a = 0; a < n; ++a) {
      const std::string fa = f + "[" + std::to_string(a) + "]";
      if (kernel) {
        if (!data[a].is_array() || data[a].size() != n) {
          throw Error(ErrorCode::kDimensionMismatch, "expected n_grid kernel rows", fa);
        }
        for (std::size_t b = 0; b < n; ++b) {
          const std::string fb = fa + "[" + std::to_string(b) + "]";
          const Vector v = get_vector(data[a][b], fb);
          require_dim(v.size(), size, fb);
          table[a].push_back(reshape(v, rows, cols));
        }
      } else {
        const Vector v = get_vector(data[a], fa);
        require_dim(v.size(), size, fa);
        table[a].push_back(reshape(v, rows, cols));
      }
    }
    if (kernel) {
      return [table, h, n](double s, double t) { return table[cell(s, h, n)][cell(t, h, n)]; };
    }
    return [table, h, n](double, double t) { return table[cell(t, h, n)][0]; };
  }
  throw Error(ErrorCode::kParse, "unknown function kind '" + kind + "'", join(path, "kind"));
}

VectorFn vector_fn(SampleFn f) {
  return [f = std::move(f)](double t) { return Vector(f(t, t).col(0)); };
}

ConicProblem parse_conic(const Json& j) {
  Operator A = parse_operator_at(at(j, "A", ""), "A");
  Vector b = get_vector(at(j, "b", ""), "b");
  Vector c = get_vector(at(j, "c", ""), "c");
  Cone S = parse_cone_at(at(j, "S", ""), "S");
  Cone T = parse_cone_at(at(j, "T", ""), "T");
  Pairing px = j.contains("pairing_X") ? parse_pairing_at(j.at("pairing_X"), "pairing_X")
                                       : Pairing::euclidean();
  Pairing py = j.contains("pairing_Y") ? parse_pairing_at(j.at("pairing_Y"), "pairing_Y")
                                       : Pairing::euclidean();
  ConicProblem pb(std::move(A), std::move(b), std::move(c), std::move(S), std::move(T),
                  std::move(px), std::move(py));
  pb.validate();
  return pb;
}

ComplexLPSpec parse_complex(const Json& j) {
  ComplexLPSpec spec;
  spec.A = parse_complex_matrix(at(j, "A", ""), "A");
  spec.b = get_complex_vector(at(j, "b", ""), "b");
  spec.c = get_complex_vector(at(j, "c", ""), "c");
  spec.alpha = get_list(at(j, "alpha", ""), "alpha");
  spec.beta = get_list(at(j, "beta", ""), "beta");
  spec.s_orientation = parse_orientation(j, "s_orientation");
  spec.t_orientation = parse_orientation(j, "t_orientation");
  spec.game_slice = j.value("game_slice", false);
  spec.validate();
  return spec;
}

ClpInput parse_clp(const Json& j) {
  ClpInput in;
  ContinuousLPSpec& s = in.spec;
  s.m = get_index(at(j, "m", ""), "m");
  s.n = get_index(at(j, "n", ""), "n");
  s.horizon = get_double(at(j, "T", ""), "T");
  s.n_grid = static_cast<int>(get_index(at(j, "n_grid", ""), "n_grid"));
  if (j.contains("bound")) s.bound = get_double(j.at("bound"), "bound");
  s.B = [f = parse_function(at(j, "B", ""), s.m, s.n, s, "B")](double t) { return f(t, t); };
  s.K = parse_function(at(j, "K", ""), s.m, s.n, s, "K");
  s.b = vector_fn(parse_function(at(j, "b", ""), s.n, 1, s, "b"));
  s.c = vector_fn(parse_function(at(j, "c", ""), s.m, 1, s, "c"));
  if (j.contains("x_hat")) in.x_hat = vector_fn(parse_function(j.at("x_hat"), s.m, 1, s, "x_hat"));
  if (j.contains("y_hat")) in.y_hat = vector_fn(parse_function(j.at("y_hat"), s.n, 1, s, "y_hat"));
  // Samples every callback, so causality and bound violations surface at load.
  discretize_clp(s);
  return in;
}

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number_to_json(v(i)));
  return a;
}

Json optional_vector(const std::optional<Vector>& v) {
  return v ? vector_json(*v) : Json(nullptr);
}

Json optional_bool(const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); }

Vector vector_from(const Json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number_from_json(j[i]);
  }
  return v;
}

std::optional<Vector> optional_vector_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return vector_from(j);
}

std::optional<bool> optional_bool_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

LpStatus status_from(const std::string& s) {
  if (s == "optimal") return LpStatus::kOptimal;
  if (s == "unbounded") return LpStatus::kUnbounded;
  if (s == "infeasible") return LpStatus::kInfeasible;
  throw Error(ErrorCode::kParse, "unknown status '" + s + "'", "status");
}

Json residuals_json(const FarkasResiduals& r) {
  return {{"eq_residual", number_to_json(r.eq_residual)},
          {"cone_residual", number_to_json(r.cone_residual)},
          {"strict_margin", number_to_json(r.strict_margin)},
          {"residual_value", number_to_json(r.residual_value)}};
}

}  // namespace

ParsedProblem parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open file", path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what(), path);
  }
  return parse_problem_json(j);
}

ParsedProblem parse_problem_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "expected an object", "");
  const std::string type = j.value("type", std::string("conic"));
  try {
    if (type == "conic") return parse_conic(j);
    if (type == "complex") return parse_complex(j);
    if (type == "clp") return parse_clp(j);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("schema error: ") + e.what(), type);
  }
  throw Error(ErrorCode::kParse, "unknown problem type '" + type + "'", "type");
}

Operator parse_operator(const Json& j) { return parse_operator_at(j, "A"); }
Cone parse_cone(const Json& j) { return parse_cone_at(j, ""); }
Pairing parse_pairing(const Json& j) { return parse_pairing_at(j, ""); }

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorCode::kParse, "expected a number", "");
}

Json report_to_json(const SolveReport& r) {
  Json j;
  j["v_primal"] = number_to_json(r.v_primal);
  j["v_dual"] = number_to_json(r.v_dual);
  j["primal_status"] = std::string(to_string(r.primal_status));
  j["dual_status"] = std::string(to_string(r.dual_status));
  j["x_star"] = optional_vector(r.x_star);
  j["y_star"] = optional_vector(r.y_star);
  j["x_hat"] = optional_vector(r.x_hat);
  j["y_hat"] = optional_vector(r.y_hat);
  j["gap"] = r.gap ? number_to_json(*r.gap) : Json(nullptr);
  j["comp_residuals"] = r.comp_residuals
                            ? Json::array({number_to_json(r.comp_residuals->first),
                                           number_to_json(r.comp_residuals->second)})
                            : Json(nullptr);
  const ReportFlags& f = r.flags;
  j["flags"] = {
      {"primal_interior_opt", f.primal_interior_opt},
      {"dual_interior_opt", f.dual_interior_opt},
      {"F4_holds", optional_bool(f.f4_holds)},
      {"S_hat_P_nonempty", optional_bool(f.s_hat_p_nonempty)},
      {"S_hat_D_nonempty", optional_bool(f.s_hat_d_nonempty)},
      {"S_tilde_minus_hat_P_nonempty", optional_bool(f.s_tilde_minus_hat_p_nonempty)},
      {"S_tilde_minus_hat_D_nonempty", optional_bool(f.s_tilde_minus_hat_d_nonempty)},
      {"systems_solved", Json::array({f.systems_solved.first, f.systems_solved.second})},
  };
  j["preconditions_met"] = r.preconditions_met;
  j["indeterminate"] = r.indeterminate;
  j["notes"] = r.notes;
  return j;
}

SolveReport report_from_json(const Json& j) {
  SolveReport r;
  r.v_primal = number_from_json(j.at("v_primal"));
  r.v_dual = number_from_json(j.at("v_dual"));
  r.primal_status = status_from(j.at("primal_status").get<std::string>());
  r.dual_status = status_from(j.at("dual_status").get<std::string>());
  r.x_star = optional_vector_from(j.at("x_star"));
  r.y_star = optional_vector_from(j.at("y_star"));
  r.x_hat = optional_vector_from(j.at("x_hat"));
  r.y_hat = optional_vector_from(j.at("y_hat"));
  if (!j.at("gap").is_null()) r.gap = number_from_json(j.at("gap"));
  if (!j.at("comp_residuals").is_null()) {
    const Json& c = j.at("comp_residuals");
    r.comp_residuals = std::make_pair(number_from_json(c[0]), number_from_json(c[1]));
  }
  const Json& f = j.at("flags");
  r.flags.primal_interior_opt = f.at("primal_interior_opt").get<bool>();
  r.flags.dual_interior_opt = f.at("dual_interior_opt").get<bool>();
  r.flags.f4_holds = optional_bool_from(f.at("F4_holds"));
  r.flags.s_hat_p_nonempty = optional_bool_from(f.at("S_hat_P_nonempty"));
  r.flags.s_hat_d_nonempty = optional_bool_from(f.at("S_hat_D_nonempty"));
  r.flags.s_tilde_minus_hat_p_nonempty = optional_bool_from(f.at("S_tilde_minus_hat_P_nonempty"));
  r.flags.s_tilde_minus_hat_d_nonempty = optional_bool_from(f.at("S_tilde_minus_hat_D_nonempty"));
  r.flags.systems_solved = {f.at("systems_solved")[0].get<bool>(),
                            f.at("systems_solved")[1].get<bool>()};
  r.preconditions_met = j.at("preconditions_met").get<bool>();
  r.indeterminate = j.at("indeterminate").get<bool>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

Json outcome_to_json(const FarkasOutcome& o) {
  Json j;
  j["system"] = std::string(to_string(o.system));
  j["branch"] = std::string(to_string(o.branch));
  j["point"] = optional_vector(o.point);
  j["cert"] = optional_vector(o.cert);
  j["residuals"] = residuals_json(o.residuals);
  return j;
}

Json boundary_to_json(const BoundaryReport& r) {
  Json j;
  j["primal_system"] = std::string(to_string(r.primal_system));
  j["dual_system"] = std::string(to_string(r.dual_system));
  j["characterization_applies"] = r.characterization_applies;
  j["z_on_boundary"] = r.z_on_boundary;
  j["w_on_boundary"] = r.w_on_boundary;
  j["note"] = r.note;
  Json table = Json::array();
  for (const AngleEntry& e : r.angles) {
    table.push_back({{"side", std::string(1, e.side)},
                     {"index", e.index},
                     {"value", Json::array({number_to_json(e.value.real()),
                                            number_to_json(e.value.imag())})},
                     {"arg", number_to_json(e.arg)},
                     {"lower", number_to_json(e.lower)},
                     {"upper", number_to_json(e.upper)},
                     {"boundary_distance", number_to_json(e.boundary_distance)},
                     {"real", e.real},
                     {"on_boundary", e.on_boundary}});
  }
  j["angles"] = table;
  j["solve"] = report_to_json(r.solve);
  return j;
}

}  // namespace conicdual::cli
