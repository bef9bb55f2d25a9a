#include "conicdual/simplex.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace conicdual {

LinearProgram::LinearProgram(Eigen::Index num_vars)
    : objective(Vector::Zero(num_vars)),
      ge_matrix(0, num_vars),
      ge_rhs(0),
      le_matrix(0, num_vars),
      le_rhs(0),
      eq_matrix(0, num_vars),
      eq_rhs(0) {}

namespace {

void append_rows(Matrix& dst, Vector& dst_rhs, const Matrix& rows,
                 const Vector& rhs, Eigen::Index num_vars) {
  require_dim(rows.cols(), num_vars, "lp row width");
  require_dim(rhs.size(), rows.rows(), "lp rhs");
  const Eigen::Index old = dst.rows();
  dst.conservativeResize(old + rows.rows(), num_vars);
  dst.bottomRows(rows.rows()) = rows;
  dst_rhs.conservativeResize(old + rows.rows());
  dst_rhs.tail(rows.rows()) = rhs;
}

}  // namespace

void LinearProgram::add_ge(const Vector& row, double rhs) {
  add_ge(Matrix(row.transpose()), Vector::Constant(1, rhs));
}
void LinearProgram::add_le(const Vector& row, double rhs) {
  add_le(Matrix(row.transpose()), Vector::Constant(1, rhs));
}
void LinearProgram::add_eq(const Vector& row, double rhs) {
  add_eq(Matrix(row.transpose()), Vector::Constant(1, rhs));
}
void LinearProgram::add_ge(const Matrix& rows, const Vector& rhs) {
  append_rows(ge_matrix, ge_rhs, rows, rhs, num_vars());
}
void LinearProgram::add_le(const Matrix& rows, const Vector& rhs) {
  append_rows(le_matrix, le_rhs, rows, rhs, num_vars());
}
void LinearProgram::add_eq(const Matrix& rows, const Vector& rhs) {
  append_rows(eq_matrix, eq_rhs, rows, rhs, num_vars());
}

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

SimplexFailure::SimplexFailure(std::string message, std::string basis_dump)
    : Error(ErrorCode::kSolverFailure, message + "; basis: " + basis_dump),
      basis_dump_(std::move(basis_dump)) {}

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options), n_(lp.num_vars()) {
    const Eigen::Index n_ge = lp.ge_matrix.rows();
    const Eigen::Index n_le = lp.le_matrix.rows();
    const Eigen::Index n_eq = lp.eq_matrix.rows();
    m_ = n_ge + n_le + n_eq;
    const Eigen::Index n_slack = n_ge + n_le;

    // Standard form rows [A | ±I_slack], sign-normalized so rhs ≥ 0.
    Matrix a = Matrix::Zero(m_, n_ + n_slack);
    Vector rhs(m_);
    a.topLeftCorner(n_ge, n_) = lp.ge_matrix;
    a.block(n_ge, 0, n_le, n_) = lp.le_matrix;
    a.bottomLeftCorner(n_eq, n_) = lp.eq_matrix;
    rhs << lp.ge_rhs, lp.le_rhs, lp.eq_rhs;
    for (Eigen::Index i = 0; i < n_ge; ++i) a(i, n_ + i) = -1.0;
    for (Eigen::Index i = 0; i < n_le; ++i) a(n_ge + i, n_ + n_ge + i) = 1.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (rhs(i) < 0.0) {
        a.row(i) *= -1.0;
        rhs(i) = -rhs(i);
      }
    }

    // Rows whose slack already has coefficient +1 start with that slack
    // basic; the rest get an artificial.
    basis_.assign(m_, -1);
    std::vector<Eigen::Index> needs_artificial;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i < n_slack && a(i, n_ + i) == 1.0) {
        basis_[i] = n_ + i;
      } else {
        needs_artificial.push_back(i);
      }
    }
    first_artificial_ = n_ + n_slack;
    total_ = first_artificial_ + static_cast<Eigen::Index>(needs_artificial.size());

    standard_ = Matrix::Zero(m_, total_);
    standard_.leftCols(first_artificial_) = a;
    for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
      const Eigen::Index i = needs_artificial[k];
      standard_(i, first_artificial_ + k) = 1.0;
      basis_[i] = first_artificial_ + static_cast<Eigen::Index>(k);
    }
    standard_rhs_ = rhs;

    cost_ = Vector::Zero(total_);
    cost_.head(n_) = lp.objective;

    table_ = Matrix::Zero(m_ + 1, total_ + 1);
    table_.topLeftCorner(m_, total_) = standard_;
    table_.topRightCorner(m_, 1) = rhs;

    cap_ = options_.max_iterations > 0
               ? options_.max_iterations
               : 50 * static_cast<int>(m_ + total_) + 1000;
    blocked_.assign(total_, false);
  }

  LpSolution run() {
    LpSolution out;
    // Phase 1.
    if (first_artificial_ < total_) {
      Vector phase1 = Vector::Zero(total_);
      phase1.tail(total_ - first_artificial_).setOnes();
      load_objective(phase1);
      if (iterate(nullptr) != LpStatus::kOptimal) {
        throw SimplexFailure("phase 1 reported unbounded", dump());
      }
      const double infeas = -table_(m_, total_);
      const double scale = 1.0 + standard_rhs_.cwiseAbs().maxCoeff();
      if (infeas > options_.feasibility_tolerance * scale) {
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      drive_out_artificials();
      for (Eigen::Index j = first_artificial_; j < total_; ++j) blocked_[j] = true;
    }
    // Phase 2.
    load_objective(cost_);
    Eigen::Index unbounded_col = -1;
    const LpStatus status = iterate(&unbounded_col);
    out.status = status;
    out.iterations = iterations_;
    out.x = refined_solution();
    if (status == LpStatus::kUnbounded) {
      Vector ray = Vector::Zero(total_);
      ray(unbounded_col) = 1.0;
      for (Eigen::Index i = 0; i < m_; ++i) ray(basis_[i]) = -table_(i, unbounded_col);
      out.ray = ray.head(n_);
      out.value = -std::numeric_limits<double>::infinity();
    } else {
      out.value = cost_.head(n_).dot(out.x);
    }
    return out;
  }

 private:
  void load_objective(const Vector& c) {
    Vector row = Vector::Zero(total_ + 1);
    row.head(total_) = c;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double cb = c(basis_[i]);
      if (cb != 0.0) row -= cb * table_.row(i).transpose();
    }
    table_.row(m_) = row.transpose();
  }

  void pivot(Eigen::Index r, Eigen::Index e) {
    const double p = table_(r, e);
    table_.row(r) /= p;
    const Eigen::RowVectorXd pivot_row = table_.row(r);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = table_(i, e);
      if (f != 0.0) table_.row(i) -= f * pivot_row;
    }
    table_(r, e) = 1.0;
    basis_[r] = e;
  }

  LpStatus iterate(Eigen::Index* unbounded_col) {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < total_; ++j) {
        if (!blocked_[j] && table_(m_, j) < -options_.cost_tolerance) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double a = table_(i, enter);
        if (a > options_.pivot_tolerance) {
          best = std::min(best, std::max(table_(i, total_), 0.0) / a);
        }
      }
      Eigen::Index leave = -1;
      if (std::isfinite(best)) {
        const double band = best + 1e-12 * (1.0 + best);
        for (Eigen::Index i = 0; i < m_; ++i) {
          const double a = table_(i, enter);
          if (a <= options_.pivot_tolerance) continue;
          if (std::max(table_(i, total_), 0.0) / a <= band &&
              (leave < 0 || basis_[i] < basis_[leave])) {
            leave = i;
          }
        }
      }
      if (leave < 0) {
        if (unbounded_col != nullptr) *unbounded_col = enter;
        return LpStatus::kUnbounded;
      }
      if (++iterations_ > cap_) {
        throw SimplexFailure("cycling guard tripped after " +
                                 std::to_string(cap_) + " pivots",
                             dump());
      }
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      Eigen::Index col = -1;
      double best = options_.pivot_tolerance;
      for (Eigen::Index j = 0; j < first_artificial_; ++j) {
        if (std::abs(table_(i, j)) > best) {
          best = std::abs(table_(i, j));
          col = j;
        }
      }
      // A row with no usable entry is redundant; its artificial stays basic
      // at zero and can never move because the row is zero elsewhere.
      if (col >= 0) pivot(i, col);
    }
  }

  Vector refined_solution() const {
    Vector full = Vector::Zero(total_);
    for (Eigen::Index i = 0; i < m_; ++i) full(basis_[i]) = table_(i, total_);
    if (m_ > 0) {
      Matrix basis_matrix(m_, m_);
      for (Eigen::Index i = 0; i < m_; ++i) basis_matrix.col(i) = standard_.col(basis_[i]);
      Eigen::PartialPivLU<Matrix> lu(basis_matrix);
      const Vector xb = lu.solve(standard_rhs_);
      const double resid = (basis_matrix * xb - standard_rhs_).cwiseAbs().maxCoeff();
      const double scale = 1.0 + standard_rhs_.cwiseAbs().maxCoeff();
      if (xb.allFinite() && resid <= 1e-9 * scale &&
          xb.minCoeff() >= -1e-7 * (1.0 + xb.cwiseAbs().maxCoeff())) {
        for (Eigen::Index i = 0; i < m_; ++i) full(basis_[i]) = std::max(xb(i), 0.0);
      }
    }
    return full.head(n_);
  }

  std::string dump() const {
    std::ostringstream out;
    out << "[";
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i) out << ", ";
      out << basis_[i] << "=" << table_(i, total_);
    }
    out << "]";
    return out.str();
  }

  SimplexOptions options_;
  Eigen::Index n_ = 0;
  Eigen::Index m_ = 0;
  Eigen::Index first_artificial_ = 0;
  Eigen::Index total_ = 0;
  Matrix standard_;
  Vector standard_rhs_;
  Vector cost_;
  Matrix table_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> blocked_;
  int cap_ = 0;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  require_finite(lp.objective, "objective");
  require_finite(lp.ge_matrix, "ge_matrix");
  require_finite(lp.le_matrix, "le_matrix");
  require_finite(lp.eq_matrix, "eq_matrix");
  require_finite(lp.ge_rhs, "ge_rhs");
  require_finite(lp.le_rhs, "le_rhs");
  require_finite(lp.eq_rhs, "eq_rhs");
  Tableau tableau(lp, options);
  return tableau.run();
}

}  // namespace conicdual
