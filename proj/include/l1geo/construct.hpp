#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "l1geo/ballgeo.hpp"
#include "l1geo/solset.hpp"

namespace l1geo {

/// origin + span(direction_basis); both bases orthonormal, mutually
/// orthogonal, with canonical column signs.
struct AffineSubspace {
  Vector origin;
  Matrix direction_basis;
  Matrix normal_basis;

  /// {x : <a_k, x - origin> = 0} for the columns a_k of `normals`.
  static AffineSubspace from_normals(Vector origin, const Matrix& normals, const Tolerances& tol = {});
  /// origin + span of the columns of `directions`.
  static AffineSubspace from_directions(Vector origin, const Matrix& directions, const Tolerances& tol = {});
  /// Smallest affine subspace containing the points.
  static AffineSubspace affine_hull(const std::vector<Vector>& points, const Tolerances& tol = {});

  Eigen::Index ambient_dim() const { return origin.size(); }
  Eigen::Index dim() const { return direction_basis.cols(); }
  lp::Constraints region() const;
};

struct SphereContact {
  double min_norm = 0;  ///< min over A of ||D^* x||_1
  Vector x_bar;         ///< a minimizer
};

SphereContact sphere_contact(const Dictionary& dict, const AffineSubspace& affine, const Tolerances& tol = {});

/// Nonempty A cap B_r lying in the sphere: the minimum of ||D^* x||_1 over A is r.
bool check_sphere_condition(const Dictionary& dict, const AffineSubspace& affine, double radius,
                            const Tolerances& tol = {});

/// The solution set a construction aims at.
struct TargetSet {
  enum class Kind { affine_ball, affine_face };
  Kind kind = Kind::affine_face;
  AffineSubspace affine;
  double radius = 0;
  SignVector face_sign;  ///< affine_face only

  /// A cap B_r (l1 lift, extra variables) or A cap F (H-representation).
  lp::Constraints region(const Dictionary& dict) const;
};

struct ConstructedInstance {
  ProblemInstance inst;
  TargetSet target;
  DualCertificate certificate;  ///< u at x_bar
  Vector x_bar;                 ///< a point of the target set used to build y
  Vector beta;                  ///< y = Phi x_bar + lambda beta
  SignVector base_sign;         ///< sign(D^* x_bar) (theorem path) or the face sign
  std::vector<std::pair<SignVector, double>> alphas;  ///< D u = sum alpha_s D s, alpha_s > 0
};

struct ArbOptions {
  std::size_t max_cosupport = 8;  ///< the alpha search spans 3^|cosupp| signs
  std::uint64_t seed = 0;
  int retries = 5;
};

/// Phi with Ker Phi = dir(A), y and lambda whose solution set is A cap B_r.
ConstructedInstance construct_theorem_arb(const Dictionary& dict, const AffineSubspace& affine, double radius,
                                          double lambda, const ArbOptions& opts = {},
                                          const Tolerances& tol = {});

/// Phi = (D s | a_1 | ... | a_m)^*, y = Phi x + lambda e_1 with solution set A cap F.
ConstructedInstance construct_arbitrary_face(const Dictionary& dict, const SignVector& face_sign, double radius,
                                             const AffineSubspace& affine, double lambda,
                                             const Tolerances& tol = {});

struct VerificationReport {
  bool pass = false;
  double max_support_gap = 0;
  bool kernel_ok = false;
  double certificate_residual = 0;
  bool certificate_ok = false;
  SolutionSetDescription recovered;
  std::vector<Vector> extreme_points;  ///< empty unless the recovered set is compact
  std::vector<std::string> failures;
};

struct VerifyOptions {
  double gap_tol = 1e-6;
  AdmmOptions admm;
};

/// Solves the constructed instance, describes its solution set and compares
/// it with the target through support functions along +-e_i and +-d_j.
VerificationReport verify_construction(const ConstructedInstance& ci, const VerifyOptions& opts = {},
                                       const Tolerances& tol = {});

}  // namespace l1geo
