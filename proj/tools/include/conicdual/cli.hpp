#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "conicdual/conicdual.hpp"

namespace conicdual::cli {

using Json = nlohmann::json;

enum class Subcommand { kSolve, kFarkas, kVerifyT21, kVerifyT22, kComplex, kClp, kBatch };
enum class OutputFormat { kText, kJson };

std::string_view to_string(Subcommand s);
Subcommand parse_subcommand(std::string_view name);

struct RunConfig {
  Subcommand subcommand = Subcommand::kSolve;
  std::string input_path;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  OutputFormat output = OutputFormat::kText;
  int jobs = 1;
  // batch only
  std::string suite = "farkas";
  int count = 200;

  void validate() const;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitTheoremViolation = 3;
inline constexpr int kExitIndeterminate = 4;

// A ContinuousLPSpec file may also carry the feasible points for the
// sign-condition pipeline.
struct ClpInput {
  ContinuousLPSpec spec;
  VectorFn x_hat;
  VectorFn y_hat;
};

using ParsedProblem = std::variant<ConicProblem, ComplexLPSpec, ClpInput>;

/// Reads and validates a problem file; the top-level "type" selects the
/// schema ("conic" when absent).
ParsedProblem parse_problem(const std::string& path);
ParsedProblem parse_problem_json(const Json& j);

Operator parse_operator(const Json& j);
Cone parse_cone(const Json& j);
Pairing parse_pairing(const Json& j);

// Infinite and NaN doubles are written as the strings "inf", "-inf", "nan".
Json number_to_json(double v);
double number_from_json(const Json& j);

Json report_to_json(const SolveReport& r);
SolveReport report_from_json(const Json& j);
Json outcome_to_json(const FarkasOutcome& o);
Json boundary_to_json(const BoundaryReport& r);

struct BatchSummary {
  Json document;
  int exit_code = kExitOk;
};

/// Seeded instance suites: "farkas" (exclusivity and totality of the
/// alternative) and "t21" (interior-optimum instances through the
/// interior-optimum pipeline). Output is independent of `jobs`.
BatchSummary run_batch(const std::string& suite, int count, std::uint64_t seed,
                       int jobs, double tol);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Argument parsing front end used by the binary.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace conicdual::cli
