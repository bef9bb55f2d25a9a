#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace conicdual {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class ErrorCode {
  kDimensionMismatch,
  kNonFinite,
  kInvalidArgument,
  kF1Violated,
  kUnsupported,
  kNonConvergence,
  kSolverFailure,
  kTheoremViolation,
  kParse,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code and, where it applies,
// the name of the offending field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string field = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

void require_finite(const Vector& v, std::string_view field);
void require_finite(const Matrix& m, std::string_view field);
void require_dim(Eigen::Index actual, Eigen::Index expected,
                 std::string_view field);

}  // namespace conicdual
