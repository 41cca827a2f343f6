#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "l1geo/linalg.hpp"
#include "l1geo/lp.hpp"
#include "l1geo/signpat.hpp"

namespace l1geo {

/// Analysis operator D (n x p, atoms as columns) with cached subspaces.
/// The regularizer is x -> ||D^* x||_1.
class Dictionary {
 public:
  explicit Dictionary(Matrix d, const Tolerances& tol = {});

  Eigen::Index n() const { return d_.rows(); }
  Eigen::Index p() const { return d_.cols(); }
  const Matrix& d() const { return d_; }
  const Matrix& dt() const { return dt_; }

  /// Orthonormal basis of Ker D^* (inside R^n); the lineality space of the ball.
  const Matrix& ker_dt() const { return ker_dt_; }
  /// Orthonormal basis of Ker D (inside R^p).
  const Matrix& ker_d() const { return ker_d_; }
  /// Orthogonal projector onto (Ker D^*)^perp = Im D.
  const Matrix& range_projector() const { return range_projector_; }

  Vector analysis(const Vector& x) const;   // D^* x
  Vector synthesis(const SignVector& s) const;  // D s
  double norm(const Vector& x) const { return analysis(x).lpNorm<1>(); }
  Matrix dt_rows(const std::vector<int>& rows) const;

 private:
  Matrix d_, dt_, ker_dt_, ker_d_, range_projector_;
};

struct FeasibilityVerdict {
  bool feasible = false;
  Vector witness;              ///< sign_of(D^* witness) == s when feasible
  Vector farkas_eq, farkas_le;  ///< certificate for the LP when infeasible
};

/// Decides whether s = sign(D^* x) for some x through the LP
///   min <c,x>  s.t.  D_J^* x = 0,  s_i <d_i, x> >= 1 on supp(s).
/// The verdict does not depend on c.
FeasibilityVerdict is_feasible(const Dictionary& dict, const SignVector& s,
                               const std::optional<Vector>& c = std::nullopt,
                               const Tolerances& tol = {});

/// Region of the feasibility LP (exposed for certificate checks).
lp::Constraints feasibility_region(const Dictionary& dict, const SignVector& s);

struct EnumerationOptions {
  std::size_t max_p = 12;
  unsigned threads = 1;
};

/// All feasible signs, ascending in the lexicographic order -1 < 0 < +1.
std::vector<SignVector> enumerate_feasible_signs(const Dictionary& dict,
                                                 const EnumerationOptions& opts = {},
                                                 const Tolerances& tol = {});

/// Orthonormal basis of (Ker D^*)^perp cap (D s)^perp cap Ker D^*_J, J = cosupp(s).
/// Computed as the kernel of B = (U | D s | D_J)^* with U spanning Ker D^*.
Matrix quotient_face_directions(const Dictionary& dict, const SignVector& s,
                                const Tolerances& tol = {});

bool is_pre_extremal(const Dictionary& dict, const SignVector& s, const Tolerances& tol = {});

/// Feasible, pre-extremal and nonzero: the sign of a vertex of (Ker D^*)^perp cap B_1.
bool is_extremal(const Dictionary& dict, const SignVector& s, const Tolerances& tol = {});

/// Exposed face of B_r = {x : ||D^* x||_1 <= r} with maximal sign s:
///   <D s, x> = r,  D_J^* x = 0,  s_i <d_i, x> >= 0 on I = supp(s).
struct Face {
  double radius = 0;
  SignVector max_sign;
  Matrix direction_basis;  ///< orthonormal basis of (D s)^perp cap Ker D_J^*
  Vector normal;           ///< D s
  Matrix cosupport_rows;   ///< D_J^*
  Matrix signed_support_rows;  ///< diag(s_I) D_I^*

  Eigen::Index dim() const { return direction_basis.cols(); }
  Eigen::Index ambient_dim() const { return normal.size(); }
  lp::Constraints hrep() const;
  bool contains(const Vector& x, double tol = 1e-9) const;
};

Face face_from_sign(const Dictionary& dict, const SignVector& s, double radius,
                    const Tolerances& tol = {});

/// The face whose relative interior contains x (x must not lie in Ker D^*).
Face minimal_face_of_point(const Dictionary& dict, const Vector& x, const Tolerances& tol = {});

/// Inclusion of faces of the same ball, decided by the sign order.
bool face_contains(const Face& inner, const Face& outer);

/// Region of the face in the quotient (Ker D^*)^perp; a single point exactly
/// when s is extremal.
lp::Constraints quotient_face_region(const Dictionary& dict, const SignVector& s, double radius);

struct HasseDiagram {
  SignPoset poset;
  std::vector<Eigen::Index> face_dim;
  std::vector<bool> extremal;  ///< minimal nonzero elements
  std::vector<bool> maximal;
};

HasseDiagram hasse_diagram(const Dictionary& dict, const EnumerationOptions& opts = {},
                           const Tolerances& tol = {});

/// Graphviz rendering: nodes in lexicographic order labeled with the sign and
/// face dimension, class "extremal"/"maximal", edges from smaller to larger.
std::string to_dot(const HasseDiagram& diagram);

/// Randomized inner approximation of the feasible signs: for every J, samples
/// Gaussian points of Ker D_J^* and records their signs. Requires p <= 10.
std::vector<SignVector> brute_force_feasible_signs(const Dictionary& dict,
                                                   std::size_t samples_per_stratum,
                                                   std::uint64_t seed,
                                                   const Tolerances& tol = {});

}  // namespace l1geo
