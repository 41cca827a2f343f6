#include "l1geo/linalg.hpp"

#include <cmath>
#include <string>

namespace l1geo {

void Tolerances::validate() const {
  if (!(rank_rel_tol > 0 && sign_tol > 0 && lp_tol > 0 && solver_tol > 0)) {
    throw InputError("tolerances must be strictly positive");
  }
  if (!(sign_tol > solver_tol)) {
    throw InputError("sign_tol must exceed solver_tol");
  }
}

namespace linalg {
namespace {

struct Decomposition {
  Vector singular_values;
  Matrix v;  // full right singular vectors
  int rank = 0;
};

Decomposition decompose(const Matrix& m, const Tolerances& tol) {
  Decomposition d;
  if (m.rows() == 0) {
    d.v = Matrix::Identity(m.cols(), m.cols());
    return d;
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  d.singular_values = svd.singularValues();
  d.v = svd.matrixV();
  const double sigma_max = d.singular_values.size() > 0 ? d.singular_values(0) : 0.0;
  for (Eigen::Index i = 0; i < d.singular_values.size(); ++i) {
    if (d.singular_values(i) > tol.rank_rel_tol * sigma_max && d.singular_values(i) > 0) {
      ++d.rank;
    }
  }
  return d;
}

}  // namespace

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw InputError(std::string(what) + ": non-finite entry");
  }
}

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw InputError(std::string(what) + ": non-finite entry");
  }
}

int rank(const Matrix& m, const Tolerances& tol) {
  require_finite(m, "rank");
  return decompose(m, tol).rank;
}

Matrix null_space_basis(const Matrix& m, const Tolerances& tol) {
  require_finite(m, "null_space_basis");
  if (m.cols() == 0) {
    throw InputError("null_space_basis: matrix has no columns");
  }
  const Decomposition d = decompose(m, tol);
  Matrix basis = d.v.rightCols(m.cols() - d.rank);
  canonicalize_column_signs(basis);
  return basis;
}

Matrix intersect_null_spaces(std::span<const Matrix> ms, const Tolerances& tol) {
  Eigen::Index cols = -1;
  for (const Matrix& m : ms) {
    if (m.rows() == 0 && m.cols() == 0) continue;
    if (cols < 0) {
      cols = m.cols();
    } else if (m.cols() != cols) {
      throw InputError("intersect_null_spaces: column counts differ");
    }
  }
  if (cols <= 0) {
    throw InputError("intersect_null_spaces: ambient dimension unknown");
  }
  return null_space_basis(vstack(ms, cols), tol);
}

Matrix intersect_null_spaces(std::initializer_list<Matrix> ms, const Tolerances& tol) {
  return intersect_null_spaces(std::span<const Matrix>(ms.begin(), ms.size()), tol);
}

Matrix range_basis(const Matrix& m, const Tolerances& tol) {
  require_finite(m, "range_basis");
  if (m.cols() == 0 || m.rows() == 0) {
    return Matrix(m.rows(), 0);
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol.rank_rel_tol * sv(0) && sv(i) > 0) ++r;
  }
  Matrix basis = svd.matrixU().leftCols(r);
  canonicalize_column_signs(basis);
  return basis;
}

Matrix projector(const Matrix& q, Eigen::Index dim) {
  if (q.cols() == 0) return Matrix::Zero(dim, dim);
  if (q.rows() != dim) throw InputError("projector: basis has wrong ambient dimension");
  return q * q.transpose();
}

bool same_span(const Matrix& a, const Matrix& b, Eigen::Index dim, double tol) {
  const Matrix qa = a.cols() ? range_basis(a) : Matrix(dim, 0);
  const Matrix qb = b.cols() ? range_basis(b) : Matrix(dim, 0);
  return (projector(qa, dim) - projector(qb, dim)).norm() <= tol;
}

bool span_contained(const Matrix& a, const Matrix& b, Eigen::Index dim, double tol) {
  if (a.cols() == 0) return true;
  const Matrix qb = b.cols() ? range_basis(b) : Matrix(dim, 0);
  const Matrix residual = a - projector(qb, dim) * a;
  return residual.norm() <= tol * std::max(1.0, a.norm());
}

Vector pinv_apply(const Matrix& m, const Vector& b, const Tolerances& tol) {
  require_finite(m, "pinv_apply");
  if (m.rows() != b.size()) throw InputError("pinv_apply: dimension mismatch");
  if (m.rows() == 0 || m.cols() == 0) return Vector::Zero(m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  Vector coeffs = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const bool kept = sv(i) > tol.rank_rel_tol * sv(0) && sv(i) > 0;
    coeffs(i) = kept ? coeffs(i) / sv(i) : 0.0;
  }
  return svd.matrixV() * coeffs;
}

Matrix select_rows(const Matrix& m, std::span<const int> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  }
  return out;
}

Matrix vstack(std::span<const Matrix> blocks, Eigen::Index cols) {
  Eigen::Index total = 0;
  for (const Matrix& b : blocks) {
    if (b.rows() > 0) total += b.rows();
  }
  Matrix out(total, cols);
  Eigen::Index at = 0;
  for (const Matrix& b : blocks) {
    if (b.rows() == 0) continue;
    if (b.cols() != cols) throw InputError("vstack: column counts differ");
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

void canonicalize_column_signs(Matrix& q) {
  q = q.unaryExpr([](double v) { return std::abs(v) < 1e-15 ? 0.0 : v; });
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      if (std::abs(q(i, j)) > 1e-12) {
        if (q(i, j) < 0) q.col(j) *= -1.0;
        break;
      }
    }
  }
}

}  // namespace linalg
}  // namespace l1geo
