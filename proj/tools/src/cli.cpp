#include "conicdual/cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace conicdual::cli {

namespace {

constexpr std::pair<Subcommand, std::string_view> kNames[] = {
    {Subcommand::kSolve, "solve"},         {Subcommand::kFarkas, "farkas"},
    {Subcommand::kVerifyT21, "verify-t21"}, {Subcommand::kVerifyT22, "verify-t22"},
    {Subcommand::kComplex, "complex"},     {Subcommand::kClp, "clp"},
    {Subcommand::kBatch, "batch"},
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string fmt(const Vector& v) {
  std::ostringstream s;
  s << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s << (i ? ", " : "") << fmt(v(i));
  s << "]";
  return s.str();
}

std::string fmt(const std::optional<bool>& b) {
  return b ? (*b ? "true" : "false") : "n/a";
}

void print_report(std::ostream& out, const SolveReport& r) {
  out << "v(P) = " << fmt(r.v_primal) << "  [" << to_string(r.primal_status) << "]\n";
  out << "v(D) = " << fmt(r.v_dual) << "  [" << to_string(r.dual_status) << "]\n";
  if (r.gap) out << "gap  = " << fmt(*r.gap) << "\n";
  if (r.x_star) out << "x*   = " << fmt(*r.x_star) << "\n";
  if (r.y_star) out << "y*   = " << fmt(*r.y_star) << "\n";
  if (r.x_hat) out << "x^   = " << fmt(*r.x_hat) << "\n";
  if (r.y_hat) out << "y^   = " << fmt(*r.y_hat) << "\n";
  if (r.comp_residuals) {
    out << "complementarity = (" << fmt(r.comp_residuals->first) << ", "
        << fmt(r.comp_residuals->second) << ")\n";
  }
  const ReportFlags& f = r.flags;
  out << "interior optima: primal " << (f.primal_interior_opt ? "yes" : "no") << ", dual "
      << (f.dual_interior_opt ? "yes" : "no") << "\n";
  if (f.f4_holds) {
    out << "F4 " << fmt(f.f4_holds) << ", S^(P) " << fmt(f.s_hat_p_nonempty) << ", S^(D) "
        << fmt(f.s_hat_d_nonempty) << ", S~\\S^(P) " << fmt(f.s_tilde_minus_hat_p_nonempty)
        << ", S~\\S^(D) " << fmt(f.s_tilde_minus_hat_d_nonempty) << "\n";
  }
  out << "systems solved: (" << (f.systems_solved.first ? "true" : "false") << ", "
      << (f.systems_solved.second ? "true" : "false") << ")\n";
  for (const std::string& n : r.notes) out << "note: " << n << "\n";
}

void print_outcome(std::ostream& out, const char* title, const FarkasOutcome& o) {
  out << title << ": " << to_string(o.branch) << "\n";
  if (o.point) out << "  point = " << fmt(*o.point) << "\n";
  if (o.cert) out << "  cert  = " << fmt(*o.cert) << "\n";
  out << "  eq_residual = " << fmt(o.residuals.eq_residual)
      << ", cone_residual = " << fmt(o.residuals.cone_residual)
      << ", strict_margin = " << fmt(o.residuals.strict_margin)
      << ", residual_value = " << fmt(o.residuals.residual_value) << "\n";
}

ConicProblem as_conic(const ParsedProblem& p) {
  if (const auto* pb = std::get_if<ConicProblem>(&p)) return *pb;
  if (const auto* cs = std::get_if<ComplexLPSpec>(&p)) return build_complex_lp(*cs);
  return discretize_clp(std::get<ClpInput>(p).spec);
}

void emit(std::ostream& out, const RunConfig& cfg, const Json& doc,
          const std::function<void()>& text) {
  if (cfg.output == OutputFormat::kJson) {
    out << doc.dump(2) << "\n";
  } else {
    text();
  }
}

int run_solve(const RunConfig& cfg, const ParsedProblem& p, std::ostream& out) {
  const SolveReport r = solve(as_conic(p));
  emit(out, cfg, report_to_json(r), [&] { print_report(out, r); });
  return kExitOk;
}

int run_farkas(const RunConfig& cfg, const ParsedProblem& p, std::ostream& out) {
  const ConicProblem pb = as_conic(p);
  const FarkasOutcome fp = farkas_primal(pb.A, pb.b, pb.S, pb.pairing_X, pb.pairing_Y, cfg.tol);
  const FarkasOutcome fd = farkas_dual(pb.A, pb.c, pb.T, pb.pairing_X, pb.pairing_Y, cfg.tol);
  const bool vp = verify_outcome(fp, pb.A, pb.b, pb.S, pb.pairing_X, pb.pairing_Y, cfg.tol);
  const bool vd = verify_outcome(fd, pb.A, pb.c, pb.T, pb.pairing_X, pb.pairing_Y, cfg.tol);
  Json doc = {{"primal", outcome_to_json(fp)}, {"dual", outcome_to_json(fd)}};
  doc["primal"]["verified"] = vp;
  doc["dual"]["verified"] = vd;
  emit(out, cfg, doc, [&] {
    print_outcome(out, "Ax = b, x in S", fp);
    out << "  verified: " << (vp ? "yes" : "no") << "\n";
    print_outcome(out, "A^T y = c, y in T", fd);
    out << "  verified: " << (vd ? "yes" : "no") << "\n";
  });
  const bool indeterminate = fp.branch == FarkasBranch::kIndeterminate ||
                             fd.branch == FarkasBranch::kIndeterminate;
  return indeterminate ? kExitIndeterminate : kExitOk;
}

int run_verify(const RunConfig& cfg, const ParsedProblem& p, std::ostream& out) {
  const ConicProblem pb = as_conic(p);
  const SolveReport r = cfg.subcommand == Subcommand::kVerifyT21
                            ? verify_theorem_2_1(pb, cfg.tol)
                            : verify_theorem_2_2(pb, cfg.tol, 1000, cfg.seed);
  emit(out, cfg, report_to_json(r), [&] { print_report(out, r); });
  return r.indeterminate ? kExitIndeterminate : kExitOk;
}

int run_complex(const RunConfig& cfg, const ParsedProblem& p, std::ostream& out) {
  const auto* spec = std::get_if<ComplexLPSpec>(&p);
  if (!spec) throw Error(ErrorCode::kInvalidArgument, "complex expects a complex problem", "type");
  const BoundaryReport r = classify_boundary_optima(*spec);
  emit(out, cfg, boundary_to_json(r), [&] {
    print_report(out, r.solve);
    out << "Az = b: " << to_string(r.primal_system) << ", A*w = c: "
        << to_string(r.dual_system) << "\n";
    out << r.note << "\n";
    for (const AngleEntry& e : r.angles) {
      out << "  " << e.side << "[" << e.index << "] arg = " << fmt(e.arg) << " in ["
          << fmt(e.lower) << ", " << fmt(e.upper) << "], edge distance "
          << fmt(e.boundary_distance) << (e.real ? " (real, excluded)" : "")
          << (e.on_boundary ? " boundary" : "") << "\n";
    }
  });
  return kExitOk;
}

int run_clp(const RunConfig& cfg, const ParsedProblem& p, std::ostream& out) {
  const auto* in = std::get_if<ClpInput>(&p);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "clp expects a clp problem", "type");
  const ClpStructureReport st = check_5_1_5_2(in->spec);
  const ClpTheoremReport r = run_theorem_5_2(in->spec, in->x_hat, in->y_hat, cfg.tol);
  Json doc = {{"condition", std::string(to_string(r.condition))},
              {"null_intersection", st.null_intersection},
              {"signs_nonnegative", st.signs_nonnegative},
              {"null_intersection_failures", st.null_intersection_failures},
              {"sign_failures", st.sign_failures},
              {"points_supplied", r.points_supplied},
              {"report", report_to_json(r.solve)}};
  emit(out, cfg, doc, [&] {
    out << "sign condition: " << to_string(r.condition) << "\n";
    out << "null intersection at every node: " << (st.null_intersection ? "yes" : "no") << "\n";
    out << "B, K, c nonnegative: " << (st.signs_nonnegative ? "yes" : "no") << "\n";
    print_report(out, r.solve);
  });
  return kExitOk;
}

int run_batch_cmd(const RunConfig& cfg, std::ostream& out) {
  const BatchSummary s = run_batch(cfg.suite, cfg.count, cfg.seed, cfg.jobs, cfg.tol);
  emit(out, cfg, s.document, [&] {
    out << "suite " << cfg.suite << ", " << cfg.count << " instances, seed " << cfg.seed << "\n";
    for (const auto& [key, value] : s.document["counts"].items()) {
      out << "  " << key << ": " << value.get<int>() << "\n";
    }
  });
  return s.exit_code;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNonConvergence:
    case ErrorCode::kSolverFailure:
      return kExitSolver;
    case ErrorCode::kTheoremViolation:
      return kExitTheoremViolation;
    default:
      return kExitUsage;
  }
}

}  // namespace

std::string_view to_string(Subcommand s) {
  for (const auto& [k, name] : kNames) {
    if (k == s) return name;
  }
  return "unknown";
}

Subcommand parse_subcommand(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown subcommand '" + std::string(name) + "'",
              "subcommand");
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive", "tol");
  if (jobs < 1) throw Error(ErrorCode::kInvalidArgument, "jobs must be >= 1", "jobs");
  if (subcommand != Subcommand::kBatch && input_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--input is required", "input");
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.subcommand == Subcommand::kBatch) return run_batch_cmd(cfg, out);
    const ParsedProblem p = parse_problem(cfg.input_path);
    switch (cfg.subcommand) {
      case Subcommand::kSolve: return run_solve(cfg, p, out);
      case Subcommand::kFarkas: return run_farkas(cfg, p, out);
      case Subcommand::kVerifyT21:
      case Subcommand::kVerifyT22: return run_verify(cfg, p, out);
      case Subcommand::kComplex: return run_complex(cfg, p, out);
      case Subcommand::kClp: return run_clp(cfg, p, out);
      case Subcommand::kBatch: break;
    }
    return kExitUsage;
  } catch (const TheoremViolation& e) {
    Json doc = report_to_json(e.report());
    doc["theorem_violation"] = e.what();
    emit(out, cfg, doc, [&] { print_report(out, e.report()); });
    err << e.what() << "\n";
    return kExitTheoremViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conic LP duality toolkit"};
  std::vector<std::string> names;
  for (const auto& [k, n] : kNames) names.emplace_back(n);
  std::string sub;
  std::string output = "text";
  RunConfig cfg;
  app.add_option("subcommand", sub, "What to run")->required()->check(CLI::IsMember(names));
  app.add_option("--input", cfg.input_path, "Problem JSON file");
  app.add_option("--tol", cfg.tol, "Feasibility tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for batch and probes")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads for batch")->capture_default_str();
  app.add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--suite", cfg.suite, "Batch suite: farkas or t21")->capture_default_str();
  app.add_option("--count", cfg.count, "Batch instance count")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.subcommand = parse_subcommand(sub);
  cfg.output = output == "json" ? OutputFormat::kJson : OutputFormat::kText;
  return run(cfg, out, err);
}

}  // namespace conicdual::cli
