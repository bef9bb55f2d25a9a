#include "conicdual/error.hpp"

#include <sstream>

namespace conicdual {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kF1Violated: return "F1 violated";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kNonConvergence: return "non-convergence";
    case ErrorCode::kSolverFailure: return "solver failure";
    case ErrorCode::kTheoremViolation: return "theorem-violation";
    case ErrorCode::kParse: return "parse error";
  }
  return "unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& message,
                    const std::string& field) {
  std::ostringstream out;
  out << to_string(code);
  if (!field.empty()) out << " [" << field << "]";
  out << ": " << message;
  return out.str();
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::string field)
    : std::runtime_error(compose(code, message, field)),
      code_(code),
      field_(std::move(field)) {}

void require_finite(const Vector& v, std::string_view field) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "vector has non-finite entries",
                std::string(field));
  }
}

void require_finite(const Matrix& m, std::string_view field) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "matrix has non-finite entries",
                std::string(field));
  }
}

void require_dim(Eigen::Index actual, Eigen::Index expected,
                 std::string_view field) {
  if (actual != expected) {
    std::ostringstream out;
    out << "expected dimension " << expected << ", got " << actual;
    throw Error(ErrorCode::kDimensionMismatch, out.str(), std::string(field));
  }
}

}  // namespace conicdual
