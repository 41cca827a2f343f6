#include "l1geo/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace l1geo::lp {

Constraints::Constraints(Eigen::Index num_vars)
    : num_vars_(num_vars),
      nonneg_(static_cast<std::size_t>(num_vars), false),
      a_eq_(0, num_vars),
      b_eq_(0),
      a_le_(0, num_vars),
      b_le_(0) {
  if (num_vars < 0) throw InputError("Constraints: negative variable count");
}

Eigen::Index Constraints::add_variables(Eigen::Index count, bool nonneg) {
  const Eigen::Index first = num_vars_;
  num_vars_ += count;
  nonneg_.resize(static_cast<std::size_t>(num_vars_), nonneg);
  a_eq_.conservativeResize(Eigen::NoChange, num_vars_);
  a_eq_.rightCols(count).setZero();
  a_le_.conservativeResize(Eigen::NoChange, num_vars_);
  a_le_.rightCols(count).setZero();
  return first;
}

void Constraints::set_nonneg(Eigen::Index var, bool nonneg) {
  nonneg_.at(static_cast<std::size_t>(var)) = nonneg;
}

RowVector Constraints::widen(const RowVector& row) const {
  if (row.size() > num_vars_) throw InputError("constraint row wider than variable count");
  RowVector out = RowVector::Zero(num_vars_);
  out.head(row.size()) = row;
  return out;
}

void Constraints::add_eq(const RowVector& row, double rhs) {
  a_eq_.conservativeResize(a_eq_.rows() + 1, Eigen::NoChange);
  a_eq_.row(a_eq_.rows() - 1) = widen(row);
  b_eq_.conservativeResize(b_eq_.size() + 1);
  b_eq_(b_eq_.size() - 1) = rhs;
}

void Constraints::add_le(const RowVector& row, double rhs) {
  a_le_.conservativeResize(a_le_.rows() + 1, Eigen::NoChange);
  a_le_.row(a_le_.rows() - 1) = widen(row);
  b_le_.conservativeResize(b_le_.size() + 1);
  b_le_(b_le_.size() - 1) = rhs;
}

void Constraints::add_eq(const Matrix& rows, const Vector& rhs) {
  if (rows.rows() != rhs.size()) throw InputError("add_eq: row/rhs count mismatch");
  for (Eigen::Index i = 0; i < rows.rows(); ++i) add_eq(RowVector(rows.row(i)), rhs(i));
}

void Constraints::add_le(const Matrix& rows, const Vector& rhs) {
  if (rows.rows() != rhs.size()) throw InputError("add_le: row/rhs count mismatch");
  for (Eigen::Index i = 0; i < rows.rows(); ++i) add_le(RowVector(rows.row(i)), rhs(i));
}

double Constraints::violation(const Vector& x) const {
  if (x.size() != num_vars_) throw InputError("violation: dimension mismatch");
  double v = 0;
  if (a_eq_.rows() > 0) v = std::max(v, (a_eq_ * x - b_eq_).cwiseAbs().maxCoeff());
  if (a_le_.rows() > 0) v = std::max(v, (a_le_ * x - b_le_).maxCoeff());
  for (Eigen::Index j = 0; j < num_vars_; ++j) {
    if (nonneg_[static_cast<std::size_t>(j)]) v = std::max(v, -x(j));
  }
  return v;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kRatioTieTol = 1e-12;

// Problem in the form  A z = b, z >= 0, b >= 0  (rows sign-normalized).
struct StandardForm {
  Matrix a;
  Vector b;
  Vector cost;
  Vector row_sign;                // sigma: original row = sigma * standard row
  std::vector<Eigen::Index> pos;  // column of x_j^+ (or x_j)
  std::vector<Eigen::Index> neg;  // column of x_j^-, -1 when x_j >= 0
  Eigen::Index m_eq = 0;
};

StandardForm to_standard(const LinearProgram& lp) {
  const Constraints& c = lp.constraints;
  StandardForm sf;
  Eigen::Index cols = 0;
  for (Eigen::Index j = 0; j < c.num_vars(); ++j) {
    sf.pos.push_back(cols++);
    sf.neg.push_back(c.nonneg(j) ? -1 : cols++);
  }
  const Eigen::Index first_slack = cols;
  cols += c.num_le();
  const Eigen::Index m = c.num_eq() + c.num_le();
  sf.m_eq = c.num_eq();
  sf.a = Matrix::Zero(m, cols);
  sf.b = Vector::Zero(m);
  sf.cost = Vector::Zero(cols);
  sf.row_sign = Vector::Ones(m);

  auto fill = [&](Eigen::Index row, const RowVector& coeffs) {
    for (Eigen::Index j = 0; j < c.num_vars(); ++j) {
      const auto k = static_cast<std::size_t>(j);
      sf.a(row, sf.pos[k]) = coeffs(j);
      if (sf.neg[k] >= 0) sf.a(row, sf.neg[k]) = -coeffs(j);
    }
  };
  for (Eigen::Index i = 0; i < c.num_eq(); ++i) {
    fill(i, c.a_eq().row(i));
    sf.b(i) = c.b_eq()(i);
  }
  for (Eigen::Index i = 0; i < c.num_le(); ++i) {
    fill(sf.m_eq + i, c.a_le().row(i));
    sf.a(sf.m_eq + i, first_slack + i) = 1.0;
    sf.b(sf.m_eq + i) = c.b_le()(i);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (sf.b(i) < 0) {
      sf.a.row(i) *= -1.0;
      sf.b(i) *= -1.0;
      sf.row_sign(i) = -1.0;
    }
  }
  for (Eigen::Index j = 0; j < lp.objective.size(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    sf.cost(sf.pos[k]) = lp.objective(j);
    if (sf.neg[k] >= 0) sf.cost(sf.neg[k]) = -lp.objective(j);
  }
  return sf;
}

// Dense tableau: constraint rows followed by one reduced-cost row; the last
// column holds the right-hand side (and -objective in the cost row).
class Tableau {
 public:
  Tableau(Matrix t, std::vector<Eigen::Index> basis, int& iterations, int cap)
      : t_(std::move(t)), basis_(std::move(basis)), iterations_(iterations), cap_(cap) {}

  enum class Result { optimal, unbounded };

  Result run(Eigen::Index allowed_cols, double cost_tol) {
    const Eigen::Index m = rows();
    const Eigen::Index rhs = t_.cols() - 1;
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        if (t_(m, j) < -cost_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Result::optimal;

      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(t_(i, rhs), 0.0) / a;
        const double slack = kRatioTieTol * (1.0 + std::abs(best));
        if (leave < 0 || ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + slack &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return Result::unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    if (++iterations_ > cap_) {
      throw ConvergenceError("simplex iteration cap (" + std::to_string(cap_) + ") exceeded");
    }
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  Eigen::Index rows() const { return t_.rows() - 1; }
  Matrix& t() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }

 private:
  Matrix t_;
  std::vector<Eigen::Index> basis_;
  int& iterations_;
  int cap_;
};

Vector to_original(const StandardForm& sf, const Vector& z) {
  Vector x(static_cast<Eigen::Index>(sf.pos.size()));
  for (std::size_t j = 0; j < sf.pos.size(); ++j) {
    double v = z(sf.pos[j]);
    if (sf.neg[j] >= 0) v -= z(sf.neg[j]);
    x(static_cast<Eigen::Index>(j)) = v;
  }
  return x;
}

void split_rows(const StandardForm& sf, const Vector& y, Vector& y_eq, Vector& y_le) {
  y_eq = y.head(sf.m_eq);
  y_le = y.tail(y.size() - sf.m_eq);
}

void validate(const LinearProgram& lp) {
  const Constraints& c = lp.constraints;
  if (lp.objective.size() > c.num_vars()) throw InputError("LP objective longer than variable count");
  linalg::require_finite(lp.objective, "LP objective");
  linalg::require_finite(c.a_eq(), "LP equality matrix");
  linalg::require_finite(c.b_eq(), "LP equality rhs");
  linalg::require_finite(c.a_le(), "LP inequality matrix");
  linalg::require_finite(c.b_le(), "LP inequality rhs");
}

}  // namespace

Outcome solve(const LinearProgram& program, const Tolerances& tol) {
  validate(program);
  const StandardForm sf = to_standard(program);
  const Eigen::Index m = sf.a.rows();
  const Eigen::Index n = sf.a.cols();
  const int cap = static_cast<int>(50 * (n + m + 1));
  const double b_scale = 1.0 + (m > 0 ? sf.b.cwiseAbs().maxCoeff() : 0.0);
  const double c_scale = 1.0 + (n > 0 ? sf.cost.cwiseAbs().maxCoeff() : 0.0);

  Outcome out;
  out.dual_eq = Vector::Zero(sf.m_eq);
  out.dual_le = Vector::Zero(m - sf.m_eq);

  // Phase 1: artificial basis, minimize the sum of artificials.
  Matrix t = Matrix::Zero(m + 1, n + m + 1);
  t.topLeftCorner(m, n) = sf.a;
  t.block(0, n, m, m).setIdentity();
  t.topRightCorner(m, 1) = sf.b;
  for (Eigen::Index i = 0; i < m; ++i) t.row(m) -= t.row(i);
  t.block(m, n, 1, m).setZero();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  Tableau phase1(std::move(t), std::move(basis), out.iterations, cap);
  phase1.run(n, tol.lp_tol * 1e-2);

  double infeasibility = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (phase1.basis()[static_cast<std::size_t>(i)] >= n) {
      infeasibility += std::abs(phase1.t()(i, n + m));
    }
  }
  if (infeasibility > tol.lp_tol * b_scale) {
    // Phase-1 duals w solve B^T w = e_art; y = -sigma * w is a Farkas vector.
    Matrix full(m, n + m);
    full << sf.a, Matrix::Identity(m, m);
    Matrix basis_mat(m, m);
    Vector cb(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index col = phase1.basis()[static_cast<std::size_t>(i)];
      basis_mat.col(i) = full.col(col);
      cb(i) = col >= n ? 1.0 : 0.0;
    }
    const Vector w = basis_mat.transpose().fullPivLu().solve(cb);
    const Vector y = -sf.row_sign.cwiseProduct(w);
    split_rows(sf, y, out.farkas_eq, out.farkas_le);
    out.status = Status::infeasible;
    return out;
  }

  // Drive artificials out of the basis; rows where that fails are redundant.
  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (phase1.basis()[static_cast<std::size_t>(i)] < n) {
      active.push_back(i);
      continue;
    }
    Eigen::Index col = -1;
    double largest = 1e-9;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(phase1.t()(i, j)) > largest) {
        largest = std::abs(phase1.t()(i, j));
        col = j;
      }
    }
    if (col >= 0) {
      phase1.pivot(i, col);
      active.push_back(i);
    }
  }

  // Phase 2 on the active rows with the true costs.
  const auto ma = static_cast<Eigen::Index>(active.size());
  Matrix t2 = Matrix::Zero(ma + 1, n + 1);
  std::vector<Eigen::Index> basis2(static_cast<std::size_t>(ma));
  for (Eigen::Index k = 0; k < ma; ++k) {
    const Eigen::Index i = active[static_cast<std::size_t>(k)];
    t2.block(k, 0, 1, n) = phase1.t().block(i, 0, 1, n);
    t2(k, n) = phase1.t()(i, n + m);
    basis2[static_cast<std::size_t>(k)] = phase1.basis()[static_cast<std::size_t>(i)];
  }
  t2.block(ma, 0, 1, n) = sf.cost.transpose();
  for (Eigen::Index k = 0; k < ma; ++k) {
    const double cb = sf.cost(basis2[static_cast<std::size_t>(k)]);
    if (cb != 0.0) t2.row(ma) -= cb * t2.row(k);
  }
  Tableau phase2(std::move(t2), std::move(basis2), out.iterations, cap);
  const auto result = phase2.run(n, tol.lp_tol * 1e-2 * c_scale);

  Vector z = Vector::Zero(n);
  for (Eigen::Index k = 0; k < ma; ++k) {
    z(phase2.basis()[static_cast<std::size_t>(k)]) = std::max(phase2.t()(k, n), 0.0);
  }

  if (result == Tableau::Result::unbounded) {
    out.status = Status::unbounded;
    out.x = to_original(sf, z);
    out.value = -std::numeric_limits<double>::infinity();
    return out;
  }

  // Recompute the basic solution and the duals from the original data.
  Matrix basis_mat(ma, ma);
  Vector b_active(ma), cb(ma);
  for (Eigen::Index k = 0; k < ma; ++k) {
    const Eigen::Index i = active[static_cast<std::size_t>(k)];
    const Eigen::Index col = phase2.basis()[static_cast<std::size_t>(k)];
    for (Eigen::Index l = 0; l < ma; ++l) {
      basis_mat(l, k) = sf.a(active[static_cast<std::size_t>(l)], col);
    }
    b_active(k) = sf.b(i);
    cb(k) = sf.cost(col);
  }
  if (ma > 0) {
    const auto lu = basis_mat.fullPivLu();
    if (lu.isInvertible()) {
      const Vector zb = lu.solve(b_active);
      Vector refined = Vector::Zero(n);
      for (Eigen::Index k = 0; k < ma; ++k) refined(phase2.basis()[static_cast<std::size_t>(k)]) = zb(k);
      auto residual = [&](const Vector& zz) {
        return (sf.a * zz - sf.b).cwiseAbs().maxCoeff() + std::max(0.0, -zz.minCoeff());
      };
      if (residual(refined) <= residual(z)) z = refined.cwiseMax(0.0);
      const Vector w = lu.transpose().solve(cb);
      Vector y = Vector::Zero(m);
      for (Eigen::Index k = 0; k < ma; ++k) {
        const Eigen::Index i = active[static_cast<std::size_t>(k)];
        y(i) = sf.row_sign(i) * w(k);
      }
      split_rows(sf, y, out.dual_eq, out.dual_le);
    }
  }

  out.status = Status::optimal;
  out.x = to_original(sf, z);
  Vector c = Vector::Zero(program.constraints.num_vars());
  c.head(program.objective.size()) = program.objective;
  out.value = c.dot(out.x);
  return out;
}

Outcome maximize(const Constraints& region, const Vector& w, const Tolerances& tol) {
  LinearProgram lp{-w, region};
  Outcome out = solve(lp, tol);
  out.value = -out.value;
  out.dual_eq = -out.dual_eq;
  out.dual_le = -out.dual_le;
  return out;
}

Outcome minimize(const Constraints& region, const Vector& w, const Tolerances& tol) {
  return solve(LinearProgram{w, region}, tol);
}

double support(const Constraints& region, const Vector& w, const Tolerances& tol) {
  const Outcome out = maximize(region, w, tol);
  switch (out.status) {
    case Status::optimal: return out.value;
    case Status::unbounded: return std::numeric_limits<double>::infinity();
    case Status::infeasible: break;
  }
  return -std::numeric_limits<double>::infinity();
}

bool is_feasible(const Constraints& region, const Tolerances& tol) {
  return solve(LinearProgram{Vector(), region}, tol).feasible();
}

Eigen::Index add_l1_ball(Constraints& region, const Matrix& dt, double radius) {
  const Eigen::Index first = add_l1_lift(region, dt);
  RowVector sum = RowVector::Zero(region.num_vars());
  sum.segment(first, dt.rows()).setOnes();
  region.add_le(sum, radius);
  return first;
}

Eigen::Index add_l1_lift(Constraints& region, const Matrix& dt) {
  if (dt.cols() > region.num_vars()) throw InputError("add_l1_lift: operator wider than the region");
  const Eigen::Index p = dt.rows();
  const Eigen::Index first = region.add_variables(p, true);
  for (Eigen::Index i = 0; i < p; ++i) {
    RowVector row = RowVector::Zero(region.num_vars());
    row.head(dt.cols()) = dt.row(i);
    row(first + i) = -1.0;
    region.add_le(row, 0.0);
    row.head(dt.cols()) = -dt.row(i);
    region.add_le(row, 0.0);
  }
  return first;
}

bool certifies_infeasibility(const Constraints& region, const Vector& y_eq, const Vector& y_le,
                             double tol) {
  if (y_eq.size() != region.num_eq() || y_le.size() != region.num_le()) return false;
  if (y_le.size() > 0 && y_le.minCoeff() < -tol) return false;
  const Vector aty = region.a_eq().transpose() * y_eq + region.a_le().transpose() * y_le;
  const double scale = 1.0 + std::max(y_eq.size() ? y_eq.cwiseAbs().maxCoeff() : 0.0,
                                      y_le.size() ? y_le.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index j = 0; j < region.num_vars(); ++j) {
    if (region.nonneg(j)) {
      if (aty(j) < -tol * scale) return false;
    } else if (std::abs(aty(j)) > tol * scale) {
      return false;
    }
  }
  const double bty = region.b_eq().dot(y_eq) + region.b_le().dot(y_le);
  return bty < -tol * scale;
}

}  // namespace l1geo::lp
