#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "conicdual/cli.hpp"

namespace conicdual::cli {

namespace {

struct InstanceResult {
  Json record;
  int exit_code = kExitOk;
};

std::mt19937_64 instance_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

Matrix uniform_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = u(rng);
  return m;
}

InstanceResult farkas_instance(std::uint64_t seed, int index, double tol) {
  auto rng = instance_rng(seed, index);
  std::uniform_int_distribution<int> dim(2, 6);
  std::uniform_int_distribution<int> half(1, 3);
  std::uniform_real_distribution<double> angle(0.2, 1.3);
  const bool wedge = index % 2 == 1;
  const Eigen::Index rows = dim(rng);
  Eigen::Index cols = 0;
  std::optional<Cone> S;
  if (wedge) {
    const int k = half(rng);
    std::vector<double> alphas;
    for (int i = 0; i < k; ++i) alphas.push_back(angle(rng));
    S = Cone::wedge(alphas);
    cols = 2 * k;
  } else {
    cols = dim(rng);
    S = Cone::orthant(cols);
  }
  const Operator A(uniform_matrix(rng, rows, cols));
  const Vector b = uniform_matrix(rng, rows, 1).col(0);

  const FarkasOutcome out = farkas_primal(A, b, *S, tol);
  // Each branch searched on its own: NNLS for x, simplex for α.
  const ResidualResult res = residual_minimize(A, b, *S);
  FarkasOutcome sol;
  sol.branch = FarkasBranch::kSolution;
  sol.point = res.preimage_x;
  const bool sol_ok = verify_outcome(sol, A, b, *S, tol);
  bool cert_ok = false;
  if (auto alpha = search_certificate_lp(FarkasSystem::kPrimal, A, b, *S,
                                         Pairing::euclidean(), Pairing::euclidean())) {
    FarkasOutcome cert;
    cert.branch = FarkasBranch::kCertificate;
    cert.cert = *alpha;
    cert_ok = verify_outcome(cert, A, b, *S, tol);
  }
  InstanceResult r;
  r.record = {{"index", index},
              {"rows", rows},
              {"cols", cols},
              {"cone", wedge ? "wedge" : "orthant"},
              {"branch", std::string(to_string(out.branch))},
              {"solution_verified", sol_ok},
              {"certificate_verified", cert_ok}};
  if (out.branch == FarkasBranch::kIndeterminate) r.exit_code = kExitIndeterminate;
  return r;
}

InstanceResult t21_instance(std::uint64_t seed, int index, double tol) {
  auto rng = instance_rng(seed, index);
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> pos(0.1, 1.0);
  const Eigen::Index n = dim(rng);
  Matrix a = uniform_matrix(rng, n, n) + 2.0 * Matrix::Identity(n, n);
  Vector x0(n), y0(n);
  for (Eigen::Index i = 0; i < n; ++i) x0(i) = pos(rng);
  for (Eigen::Index i = 0; i < n; ++i) y0(i) = pos(rng);
  const Vector b = a * x0;
  const Vector c = a.transpose() * y0;
  const ConicProblem pb(Operator(a), b, c, Cone::orthant(n), Cone::orthant(n));

  InstanceResult r;
  r.record = {{"index", index}, {"n", n}};
  try {
    const SolveReport rep = verify_theorem_2_1(pb, tol);
    r.record["systems_solved"] = Json::array({rep.flags.systems_solved.first,
                                              rep.flags.systems_solved.second});
    r.record["preconditions_met"] = rep.preconditions_met;
    r.record["gap"] = rep.gap ? number_to_json(*rep.gap) : Json(nullptr);
    r.record["violation"] = false;
    if (rep.indeterminate) r.exit_code = kExitIndeterminate;
  } catch (const TheoremViolation& e) {
    r.record["violation"] = true;
    r.record["message"] = e.what();
    r.exit_code = kExitTheoremViolation;
  }
  return r;
}

}  // namespace

BatchSummary run_batch(const std::string& suite, int count, std::uint64_t seed, int jobs,
                       double tol) {
  InstanceResult (*fn)(std::uint64_t, int, double) = nullptr;
  if (suite == "farkas") fn = farkas_instance;
  if (suite == "t21") fn = t21_instance;
  if (!fn) throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + suite + "'", "suite");
  if (count < 0) throw Error(ErrorCode::kInvalidArgument, "count must be >= 0", "count");

  std::vector<InstanceResult> results(static_cast<std::size_t>(count));
  std::vector<std::string> failures(results.size());
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        results[static_cast<std::size_t>(i)] = fn(seed, i, tol);
      } catch (const std::exception& e) {
        failures[static_cast<std::size_t>(i)] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BatchSummary summary;
  Json instances = Json::array();
  Json counts = Json::object();
  auto bump = [&](const std::string& key) { counts[key] = counts.value(key, 0) + 1; };
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!failures[i].empty()) {
      instances.push_back({{"index", i}, {"error", failures[i]}});
      bump("errors");
      if (summary.exit_code == kExitOk) summary.exit_code = kExitSolver;
      continue;
    }
    const Json& rec = results[i].record;
    instances.push_back(rec);
    if (suite == "farkas") {
      bump(rec["branch"].get<std::string>());
      if (rec["solution_verified"].get<bool>() && rec["certificate_verified"].get<bool>()) {
        bump("both_verified");
      }
      if (!rec["solution_verified"].get<bool>() && !rec["certificate_verified"].get<bool>()) {
        bump("none_verified");
      }
    } else {
      if (rec["violation"].get<bool>()) {
        bump("violations");
      } else if (rec["systems_solved"][0].get<bool>() && rec["systems_solved"][1].get<bool>()) {
        bump("systems_solved");
      }
    }
    // Violations dominate indeterminate outcomes, which dominate success.
    const int code = results[i].exit_code;
    if (code == kExitTheoremViolation || summary.exit_code == kExitOk) {
      summary.exit_code = code;
    }
  }
  summary.document = {{"suite", suite}, {"seed", seed}, {"count", count},
                      {"tol", tol},     {"counts", counts}, {"instances", instances}};
  return summary;
}

}  // namespace conicdual::cli
