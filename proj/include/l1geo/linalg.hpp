#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "l1geo/errors.hpp"

namespace l1geo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Numerical thresholds shared by every module.
///
/// `sign_tol` must exceed `solver_tol` so that a certified solve always
/// resolves the signs of its analysis coefficients.
struct Tolerances {
  double rank_rel_tol = 1e-9;  ///< singular values below this * sigma_max are zero
  double sign_tol = 1e-8;      ///< |v_i| <= sign_tol counts as a zero coordinate
  double lp_tol = 1e-9;        ///< LP feasibility / optimality slack
  double solver_tol = 1e-10;   ///< stationarity residual for certified solutions

  void validate() const;
};

namespace linalg {

void require_finite(const Matrix& m, std::string_view what);
void require_finite(const Vector& v, std::string_view what);

/// Numerical rank with threshold rank_rel_tol * sigma_max.
int rank(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal basis (as columns) of Ker m. A matrix with zero rows has the
/// whole space as kernel. Column orientation is canonical: the first entry
/// of magnitude above 1e-12 in every column is positive.
Matrix null_space_basis(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal basis of the intersection of the kernels, i.e. the kernel of
/// the vertically stacked matrix. Matrices without rows impose nothing.
Matrix intersect_null_spaces(std::span<const Matrix> ms, const Tolerances& tol = {});
Matrix intersect_null_spaces(std::initializer_list<Matrix> ms, const Tolerances& tol = {});

/// Orthonormal basis of the column space of m.
Matrix range_basis(const Matrix& m, const Tolerances& tol = {});

/// Orthogonal projector Q Q^T for a matrix with orthonormal columns.
/// `dim` is the ambient dimension, needed when q has no columns.
Matrix projector(const Matrix& q, Eigen::Index dim);

/// Span equality through ||P_a - P_b||_F <= tol (columns need not be orthonormal).
bool same_span(const Matrix& a, const Matrix& b, Eigen::Index dim, double tol = 1e-7);

/// True when span(a) is a subspace of span(b).
bool span_contained(const Matrix& a, const Matrix& b, Eigen::Index dim, double tol = 1e-7);

/// Minimum-norm least-squares solution m^+ b with the same rank threshold.
Vector pinv_apply(const Matrix& m, const Vector& b, const Tolerances& tol = {});

Matrix select_rows(const Matrix& m, std::span<const int> rows);
Matrix vstack(std::span<const Matrix> blocks, Eigen::Index cols);

/// Flip columns so that the first entry above 1e-12 in magnitude is positive.
void canonicalize_column_signs(Matrix& q);

}  // namespace linalg
}  // namespace l1geo
