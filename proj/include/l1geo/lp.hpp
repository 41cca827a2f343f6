#pragma once

#include <vector>

#include "l1geo/linalg.hpp"

namespace l1geo::lp {

/// Linear constraints over R^num_vars:
///   a_eq x = b_eq,  a_le x <= b_le,  x_j >= 0 where nonneg[j].
/// Variables are free unless flagged. The first `primary` variables are the
/// ones callers care about; the rest are lifting variables.
class Constraints {
 public:
  Constraints() = default;
  explicit Constraints(Eigen::Index num_vars);

  Eigen::Index num_vars() const { return num_vars_; }
  Eigen::Index num_eq() const { return a_eq_.rows(); }
  Eigen::Index num_le() const { return a_le_.rows(); }

  /// Appends `count` lifting variables and returns the index of the first.
  Eigen::Index add_variables(Eigen::Index count, bool nonneg);
  void set_nonneg(Eigen::Index var, bool nonneg = true);
  bool nonneg(Eigen::Index var) const { return nonneg_[static_cast<std::size_t>(var)]; }

  // Rows may be narrower than num_vars; missing trailing coefficients are 0.
  void add_eq(const RowVector& row, double rhs);
  void add_le(const RowVector& row, double rhs);
  void add_ge(const RowVector& row, double rhs) { add_le(-row, -rhs); }
  void add_eq(const Matrix& rows, const Vector& rhs);
  void add_le(const Matrix& rows, const Vector& rhs);
  void add_ge(const Matrix& rows, const Vector& rhs) { add_le(-rows, -rhs); }

  const Matrix& a_eq() const { return a_eq_; }
  const Vector& b_eq() const { return b_eq_; }
  const Matrix& a_le() const { return a_le_; }
  const Vector& b_le() const { return b_le_; }

  /// Max violation of the constraints at x (equalities in absolute value).
  double violation(const Vector& x) const;

 private:
  RowVector widen(const RowVector& row) const;

  Eigen::Index num_vars_ = 0;
  std::vector<bool> nonneg_;
  Matrix a_eq_;
  Vector b_eq_;
  Matrix a_le_;
  Vector b_le_;
};

struct LinearProgram {
  Vector objective;  ///< minimize <objective, x>; may be shorter than num_vars
  Constraints constraints;
};

enum class Status { optimal, infeasible, unbounded };

const char* to_string(Status s);

struct Outcome {
  Status status = Status::infeasible;
  /// Optimal point; for unbounded programs a feasible point on the ray's base.
  Vector x;
  double value = 0;
  /// Multipliers at the optimum with c = A_eq^T y_eq + A_le^T y_le on free
  /// variables, c >= A^T y on nonnegative ones, y_le <= 0, and value = b^T y.
  Vector dual_eq, dual_le;
  /// Infeasibility certificate: A^T y = 0 on free variables, >= 0 on
  /// nonnegative ones, y_le >= 0, and b^T y < 0.
  Vector farkas_eq, farkas_le;
  int iterations = 0;

  bool optimal() const { return status == Status::optimal; }
  bool feasible() const { return status != Status::infeasible; }
};

/// Two-phase dense simplex with Bland's rule. Deterministic.
/// Throws InputError on inconsistent/non-finite data and ConvergenceError
/// past 50 * (variables + constraints) pivots.
Outcome solve(const LinearProgram& program, const Tolerances& tol = {});

/// Maximizes <w, x> over the region (w padded with zeros).
Outcome maximize(const Constraints& region, const Vector& w, const Tolerances& tol = {});
Outcome minimize(const Constraints& region, const Vector& w, const Tolerances& tol = {});

/// Support function h(w) = sup <w, x>; +inf when unbounded, -inf when empty.
double support(const Constraints& region, const Vector& w, const Tolerances& tol = {});

bool is_feasible(const Constraints& region, const Tolerances& tol = {});

/// Adds ||dt * x||_1 <= radius, x being the first dt.cols() variables, through
/// p nonnegative variables t with -t <= dt x <= t and sum(t) <= radius.
/// Returns the index of the first t variable.
Eigen::Index add_l1_ball(Constraints& region, const Matrix& dt, double radius);

/// The lift alone: t >= |dt x| componentwise, no bound on sum(t).
Eigen::Index add_l1_lift(Constraints& region, const Matrix& dt);

/// Checks a Farkas certificate against the constraints.
bool certifies_infeasibility(const Constraints& region, const Vector& y_eq, const Vector& y_le,
                             double tol = 1e-9);

}  // namespace l1geo::lp
