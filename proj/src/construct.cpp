#include "l1geo/construct.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace l1geo {

namespace {

Matrix complement_basis(const Matrix& basis, Eigen::Index n, const Tolerances& tol) {
  if (basis.cols() == 0) return Matrix::Identity(n, n);
  return linalg::null_space_basis(basis.transpose(), tol);
}

}  // namespace

AffineSubspace AffineSubspace::from_normals(Vector origin, const Matrix& normals, const Tolerances& tol) {
  linalg::require_finite(origin, "affine origin");
  if (normals.cols() > 0 && normals.rows() != origin.size()) {
    throw InputError("affine normals have the wrong ambient dimension");
  }
  AffineSubspace a;
  a.origin = std::move(origin);
  const Eigen::Index n = a.origin.size();
  a.normal_basis = normals.cols() > 0 ? linalg::range_basis(normals, tol) : Matrix(n, 0);
  a.direction_basis = a.normal_basis.cols() == n ? Matrix(n, 0) : complement_basis(a.normal_basis, n, tol);
  return a;
}

AffineSubspace AffineSubspace::from_directions(Vector origin, const Matrix& directions, const Tolerances& tol) {
  linalg::require_finite(origin, "affine origin");
  if (directions.cols() > 0 && directions.rows() != origin.size()) {
    throw InputError("affine directions have the wrong ambient dimension");
  }
  AffineSubspace a;
  a.origin = std::move(origin);
  const Eigen::Index n = a.origin.size();
  a.direction_basis = directions.cols() > 0 ? linalg::range_basis(directions, tol) : Matrix(n, 0);
  a.normal_basis = a.direction_basis.cols() == n ? Matrix(n, 0) : complement_basis(a.direction_basis, n, tol);
  return a;
}

AffineSubspace AffineSubspace::affine_hull(const std::vector<Vector>& points, const Tolerances& tol) {
  if (points.empty()) throw InputError("affine hull of no points");
  Matrix dirs(points[0].size(), static_cast<Eigen::Index>(points.size()) - 1);
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].size() != points[0].size()) throw InputError("affine hull: points of different dimension");
    dirs.col(static_cast<Eigen::Index>(k) - 1) = points[k] - points[0];
  }
  return from_directions(points[0], dirs, tol);
}

lp::Constraints AffineSubspace::region() const {
  lp::Constraints region(ambient_dim());
  region.add_eq(normal_basis.transpose(), normal_basis.transpose() * origin);
  return region;
}

SphereContact sphere_contact(const Dictionary& dict, const AffineSubspace& affine, const Tolerances& tol) {
  if (affine.ambient_dim() != dict.n()) throw InputError("affine subspace and dictionary dimensions differ");
  lp::Constraints region = affine.region();
  const Eigen::Index t = lp::add_l1_lift(region, dict.dt());
  Vector c = Vector::Zero(region.num_vars());
  c.segment(t, dict.p()).setOnes();
  const lp::Outcome out = lp::minimize(region, c, tol);
  if (!out.optimal()) throw InternalError("sphere contact LP is not solvable");
  return {dict.norm(out.x.head(dict.n())), out.x.head(dict.n())};
}

bool check_sphere_condition(const Dictionary& dict, const AffineSubspace& affine, double radius,
                            const Tolerances& tol) {
  if (!(radius >= 0) || !std::isfinite(radius)) throw InputError("radius must be nonnegative");
  const SphereContact contact = sphere_contact(dict, affine, tol);
  return std::abs(contact.min_norm - radius) <= tol.lp_tol * (1.0 + radius);
}

lp::Constraints TargetSet::region(const Dictionary& dict) const {
  lp::Constraints region = affine.region();
  if (kind == Kind::affine_ball) {
    lp::add_l1_ball(region, dict.dt(), radius);
    return region;
  }
  region.add_eq(dict.synthesis(face_sign).transpose(), radius);
  const Matrix cos_rows = dict.dt_rows(face_sign.cosupport());
  region.add_eq(cos_rows, Vector::Zero(cos_rows.rows()));
  for (int i : face_sign.support()) {
    region.add_ge(face_sign[static_cast<std::size_t>(i)] * RowVector(dict.dt().row(i)), 0.0);
  }
  return region;
}

namespace {

void check_common(const Dictionary& dict, const AffineSubspace& affine, double radius, double lambda) {
  if (affine.ambient_dim() != dict.n()) throw InputError("affine subspace and dictionary dimensions differ");
  if (!(radius >= 0) || !std::isfinite(radius)) throw InputError("radius must be nonnegative");
  if (!(lambda > 0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
}

}  // namespace

ConstructedInstance construct_theorem_arb(const Dictionary& dict, const AffineSubspace& affine, double radius,
                                          double lambda, const ArbOptions& opts, const Tolerances& tol) {
  check_common(dict, affine, radius, lambda);
  const SphereContact contact = sphere_contact(dict, affine, tol);
  if (std::abs(contact.min_norm - radius) > tol.lp_tol * (1.0 + radius)) {
    std::ostringstream msg;
    msg << "sphere condition fails: A cap B_r must be nonempty and inside the sphere, but min over A of "
           "||D^* x||_1 = "
        << contact.min_norm << " while r = " << radius;
    throw PreconditionError(msg.str());
  }
  const Matrix phi = affine.normal_basis.transpose();
  const Eigen::Index m = phi.rows();
  const Eigen::Index n = dict.n();
  const Vector& x_bar = contact.x_bar;
  const SignVector s_bar = sign_of(dict.analysis(x_bar), tol);

  Vector beta = Vector::Zero(m);
  Vector u = Vector::Zero(dict.p());
  std::vector<std::pair<SignVector, double>> alphas;

  if (radius > tol.lp_tol) {
    const std::vector<int> cosupp = s_bar.cosupport();
    if (cosupp.size() > opts.max_cosupport) {
      throw InputError("cosupport of size " + std::to_string(cosupp.size()) + " exceeds the cap of " +
                       std::to_string(opts.max_cosupport));
    }
    std::vector<SignVector> above;
    std::size_t count = 1;
    for (std::size_t k = 0; k < cosupp.size(); ++k) count *= 3;
    for (std::size_t code = 0; code < count; ++code) {
      SignVector s = s_bar;
      std::size_t c = code;
      for (int j : cosupp) {
        s.set(static_cast<std::size_t>(j), static_cast<int>(c % 3) - 1);
        c /= 3;
      }
      above.push_back(s);
    }
    const auto k = static_cast<Eigen::Index>(above.size());

    // Variables (beta, alpha): Phi^* beta = sum alpha_s D s, sum alpha = 1, alpha >= 0.
    lp::Constraints region(m + k);
    for (Eigen::Index j = 0; j < k; ++j) region.set_nonneg(m + j);
    Matrix eq(n, m + k);
    eq.leftCols(m) = phi.transpose();
    for (Eigen::Index j = 0; j < k; ++j) eq.col(m + j) = -dict.synthesis(above[static_cast<std::size_t>(j)]);
    region.add_eq(eq, Vector::Zero(n));
    RowVector sum = RowVector::Zero(m + k);
    sum.tail(k).setOnes();
    region.add_eq(sum, 1.0);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    bool found = false;
    lp::Outcome best;
    for (int attempt = 0; attempt < opts.retries && !found; ++attempt) {
      Vector g = Vector::Zero(m + k);
      for (Eigen::Index j = 0; j < m; ++j) g(j) = normal(rng);
      for (double direction : {1.0, -1.0}) {
        const lp::Outcome out = lp::maximize(region, direction * g, tol);
        if (out.optimal() && out.x.head(m).cwiseAbs().maxCoeff() > 1e-9) {
          best = out;
          found = true;
          break;
        }
      }
    }
    if (!found) {
      throw InternalError("no nonzero element of Im Phi^* in the cone spanned by D s, s >= s_bar; "
                          "this contradicts the sphere condition");
    }
    beta = best.x.head(m);
    for (Eigen::Index j = 0; j < k; ++j) {
      const double a = best.x(m + j);
      if (a > 0) {
        alphas.emplace_back(above[static_cast<std::size_t>(j)], a);
        u += a * above[static_cast<std::size_t>(j)].to_vector();
      }
    }
  }

  const Vector y = phi * x_bar + lambda * beta;
  TargetSet target{TargetSet::Kind::affine_ball, affine, radius, SignVector()};
  return ConstructedInstance{ProblemInstance(dict, phi, y, lambda), std::move(target), DualCertificate{u},
                             x_bar, beta, s_bar, std::move(alphas)};
}

ConstructedInstance construct_arbitrary_face(const Dictionary& dict, const SignVector& face_sign, double radius,
                                             const AffineSubspace& affine, double lambda, const Tolerances& tol) {
  check_common(dict, affine, radius, lambda);
  if (!(radius > 0)) throw InputError("face radius must be positive");
  const Face face = face_from_sign(dict, face_sign, radius, tol);

  lp::Constraints region = face.hrep();
  region.add_eq(affine.normal_basis.transpose(), affine.normal_basis.transpose() * affine.origin);
  const lp::Outcome out = lp::solve(lp::LinearProgram{Vector(), region}, tol);
  if (!out.feasible()) throw PreconditionError("the affine subspace does not meet the face of sign " + face_sign.str());

  const Eigen::Index m = affine.normal_basis.cols();
  const Eigen::Index n = dict.n();
  Matrix phi(m + 1, n);
  phi.row(0) = face.normal.transpose();
  phi.bottomRows(m) = affine.normal_basis.transpose();
  // Phi x is constant on A cap F: (r, a_k . origin).
  Vector y(m + 1);
  y(0) = radius + lambda;
  y.tail(m) = affine.normal_basis.transpose() * affine.origin;
  Vector beta = Vector::Zero(m + 1);
  beta(0) = 1.0;

  TargetSet target{TargetSet::Kind::affine_face, affine, radius, face_sign};
  return ConstructedInstance{ProblemInstance(dict, phi, y, lambda), std::move(target),
                             DualCertificate{face_sign.to_vector()}, out.x, beta, face_sign,
                             {{face_sign, 1.0}}};
}

VerificationReport verify_construction(const ConstructedInstance& ci, const VerifyOptions& opts,
                                       const Tolerances& tol) {
  const ProblemInstance& inst = ci.inst;
  const Dictionary& dict = inst.dict();
  const Eigen::Index n = dict.n();
  VerificationReport report;

  Vector x;
  try {
    x = solve_admm(inst, opts.admm, tol);
  } catch (const ConvergenceError& e) {
    report.failures.push_back(e.what());
    return report;
  }
  report.recovered = describe_solution_set(inst, x, tol);
  if (report.recovered.compact) report.extreme_points = enumerate_extreme_solutions(inst, report.recovered, tol);

  // Support functions along +-e_i and +-d_j.
  const lp::Constraints target = ci.target.region(dict);
  const lp::Constraints recovered = report.recovered.region();
  std::vector<Vector> probes;
  for (Eigen::Index i = 0; i < n; ++i) probes.push_back(Vector::Unit(n, i));
  for (Eigen::Index j = 0; j < dict.p(); ++j) probes.push_back(dict.d().col(j));
  for (const Vector& w : probes) {
    for (double sgn : {1.0, -1.0}) {
      const double h_target = lp::support(target, sgn * w, tol);
      const double h_recovered = lp::support(recovered, sgn * w, tol);
      double gap = 0;
      if (std::isfinite(h_target) && std::isfinite(h_recovered)) {
        gap = std::abs(h_target - h_recovered);
      } else if (h_target != h_recovered) {
        gap = std::numeric_limits<double>::infinity();
      }
      report.max_support_gap = std::max(report.max_support_gap, gap);
    }
  }
  if (!(report.max_support_gap <= opts.gap_tol)) {
    std::ostringstream msg;
    msg << "solution set differs from the target (support-function gap " << report.max_support_gap << ")";
    report.failures.push_back(msg.str());
  }

  const Matrix ker_phi = linalg::null_space_basis(inst.phi().rows() > 0 ? inst.phi() : Matrix(0, n), tol);
  if (ci.target.kind == TargetSet::Kind::affine_ball) {
    report.kernel_ok = linalg::same_span(ker_phi, ci.target.affine.direction_basis, n);
  } else {
    const Matrix blocks[] = {dict.synthesis(ci.target.face_sign).transpose(),
                             ci.target.affine.normal_basis.transpose()};
    const Matrix expected = linalg::intersect_null_spaces(blocks, tol);
    report.kernel_ok = linalg::same_span(ker_phi, expected, n) &&
                       linalg::span_contained(ker_phi, ci.target.affine.direction_basis, n);
  }
  if (!report.kernel_ok) report.failures.push_back("Ker Phi does not have the promised relation to dir(A)");

  // Stationarity of the construction point with the recorded u.
  const Vector& u = ci.certificate.u;
  const Vector stationarity =
      inst.phi().transpose() * (inst.phi() * ci.x_bar - inst.y()) + inst.lambda() * dict.d() * u;
  report.certificate_residual = stationarity.size() ? stationarity.cwiseAbs().maxCoeff() : 0.0;
  const SignVector s = sign_of(dict.analysis(ci.x_bar), tol);
  bool subgradient = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double ui = u(static_cast<Eigen::Index>(i));
    if (s[i] != 0 ? std::abs(ui - s[i]) > 1e-9 : std::abs(ui) > 1.0 + 1e-9) subgradient = false;
  }
  report.certificate_ok = subgradient && report.certificate_residual <= 1e-9 * inst.residual_scale();
  if (!report.certificate_ok) report.failures.push_back("dual certificate does not certify the construction point");

  report.pass = report.failures.empty();
  return report;
}

}  // namespace l1geo
