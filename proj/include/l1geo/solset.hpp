#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "l1geo/ballgeo.hpp"
#include "l1geo/lp.hpp"
#include "l1geo/signpat.hpp"

namespace l1geo {

/// min_x 1/2 ||y - Phi x||^2 + lambda ||D^* x||_1
class ProblemInstance {
 public:
  ProblemInstance(Dictionary dict, Matrix phi, Vector y, double lambda);

  const Dictionary& dict() const { return dict_; }
  const Matrix& phi() const { return phi_; }
  const Vector& y() const { return y_; }
  double lambda() const { return lambda_; }
  Eigen::Index n() const { return dict_.n(); }

  /// 1 + ||Phi^* y||_inf; scales the stationarity threshold.
  double residual_scale() const;

 private:
  Dictionary dict_;
  Matrix phi_;
  Vector y_;
  double lambda_;
};

/// u in the subdifferential of ||.||_1 at D^* x with Phi^*(Phi x - y) + lambda D u = 0.
struct DualCertificate {
  Vector u;
};

double objective(const ProblemInstance& inst, const Vector& x);

struct OptimalityCheck {
  double residual = 0;  ///< min over admissible u of ||Phi^*(Phi x - y) + lambda D u||_inf
  std::optional<DualCertificate> certificate;
};

/// Stationarity residual at x with u_I = sign(D^* x)_I fixed and |u_J| <= 1.
/// A certificate is returned when residual <= solver_tol * residual_scale().
OptimalityCheck optimality_residual(const ProblemInstance& inst, const Vector& x,
                                    const Tolerances& tol = {});

struct AdmmOptions {
  double rho = 0;  ///< 0 selects rho = lambda
  double mu = 1;   ///< weight of the projector onto Ker Phi cap Ker D^*
  double tol = 0;  ///< stationarity threshold; 0 selects solver_tol
  int max_iter = 200000;
  /// Random initial (z, w) when set; zeros otherwise.
  std::optional<std::uint64_t> random_start;
};

/// ADMM on z = D^* x, finished by an exact solve on the detected sign pattern.
/// The returned x is certified by optimality_residual; throws ConvergenceError
/// otherwise.
Vector solve_admm(const ProblemInstance& inst, const AdmmOptions& opts = {},
                  const Tolerances& tol = {});

struct MaximalSign {
  SignVector sign;  ///< s_bar = max over X of sign(D^* x)
  Vector x_ri;      ///< a point of ri(X): sign(D^* x_ri) = s_bar
};

/// Sign of the relative interior of X from any solution x0, by 2p LPs over
/// {Phi x = Phi x0, ||D^* x||_1 <= ||D^* x0||_1}.
MaximalSign maximal_sign(const ProblemInstance& inst, const Vector& x0, const Tolerances& tol = {});

/// X = {x : Phi x = Phi x_ri, D_J^* x = 0, diag(s_I) D_I^* x >= 0}.
struct SolutionSetDescription {
  Vector x_ri;
  SignVector max_sign;
  double radius = 0;
  Eigen::Index dim = 0;
  bool compact = false;

  Matrix phi;
  Vector phi_x;                ///< Phi x_ri
  Matrix cosupport_rows;       ///< D_J^*
  Matrix signed_support_rows;  ///< diag(s_I) D_I^*

  Eigen::Index n() const { return x_ri.size(); }
  lp::Constraints region() const;
  bool contains(const Vector& x, double tol = 1e-9) const;
};

SolutionSetDescription describe_solution_set(const ProblemInstance& inst, const Vector& x0,
                                             const Tolerances& tol = {});

/// x in X is extreme iff Ker Phi cap Ker D_J^* = {0}, J = cosupp(D^* x).
bool is_extreme_solution(const ProblemInstance& inst, const SolutionSetDescription& desc,
                         const Vector& x, const Tolerances& tol = {});

/// ext(X) by probing the sub-signs of s_bar (requires compact X, |supp s_bar| <= 16).
std::vector<Vector> enumerate_extreme_solutions(const ProblemInstance& inst,
                                                const SolutionSetDescription& desc,
                                                const Tolerances& tol = {});

/// (min, max) of <w, x> over X; infinite when unbounded.
std::pair<double, double> coordinate_bounds(const SolutionSetDescription& desc, const Vector& w,
                                            const Tolerances& tol = {});

/// Signs sign(D^* x) realized by x in X, with their cover relation. The
/// unique maximal element is s_bar.
SignPoset solution_hasse(const ProblemInstance& inst, const SolutionSetDescription& desc,
                         const Tolerances& tol = {});

}  // namespace l1geo
