#include "l1geo/solset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace l1geo {

ProblemInstance::ProblemInstance(Dictionary dict, Matrix phi, Vector y, double lambda)
    : dict_(std::move(dict)), phi_(std::move(phi)), y_(std::move(y)), lambda_(lambda) {
  if (phi_.cols() != dict_.n()) {
    throw InputError("Phi has " + std::to_string(phi_.cols()) + " columns but D has " +
                     std::to_string(dict_.n()) + " rows");
  }
  if (y_.size() != phi_.rows()) throw InputError("y length differs from the row count of Phi");
  linalg::require_finite(phi_, "Phi");
  linalg::require_finite(y_, "y");
  if (!(lambda_ > 0) || !std::isfinite(lambda_)) throw InputError("lambda must be positive and finite");
}

double ProblemInstance::residual_scale() const {
  const Vector phit_y = phi_.transpose() * y_;
  return 1.0 + (phit_y.size() > 0 ? phit_y.cwiseAbs().maxCoeff() : 0.0);
}

double objective(const ProblemInstance& inst, const Vector& x) {
  if (x.size() != inst.n()) throw InputError("objective: vector has wrong length");
  return 0.5 * (inst.y() - inst.phi() * x).squaredNorm() + inst.lambda() * inst.dict().norm(x);
}

OptimalityCheck optimality_residual(const ProblemInstance& inst, const Vector& x, const Tolerances& tol) {
  if (x.size() != inst.n()) throw InputError("optimality_residual: vector has wrong length");
  linalg::require_finite(x, "optimality_residual");
  const Dictionary& dict = inst.dict();
  const SignVector s = sign_of(dict.analysis(x), tol);
  const std::vector<int> cosupp = s.cosupport();
  const auto nj = static_cast<Eigen::Index>(cosupp.size());
  const Eigen::Index n = inst.n();

  const Vector g = inst.phi().transpose() * (inst.phi() * x - inst.y()) + inst.lambda() * dict.synthesis(s);
  const Matrix dj = inst.lambda() * linalg::select_rows(dict.dt(), cosupp).transpose();  // n x |J|

  // Variables (u_J, t); minimize t subject to |g + dj u_J| <= t, |u_J| <= 1.
  lp::Constraints region(nj + 1);
  region.set_nonneg(nj);
  for (Eigen::Index k = 0; k < n; ++k) {
    RowVector row(nj + 1);
    row.head(nj) = dj.row(k);
    row(nj) = -1.0;
    region.add_le(row, -g(k));
    row.head(nj) = -dj.row(k);
    region.add_le(row, g(k));
  }
  for (Eigen::Index j = 0; j < nj; ++j) {
    RowVector row = RowVector::Zero(nj + 1);
    row(j) = 1.0;
    region.add_le(row, 1.0);
    region.add_ge(row, -1.0);
  }
  Vector c = Vector::Zero(nj + 1);
  c(nj) = 1.0;
  const lp::Outcome out = lp::minimize(region, c, tol);
  if (!out.optimal()) throw InternalError("stationarity LP is not solvable");

  OptimalityCheck check;
  check.residual = std::max(0.0, out.value);
  if (check.residual <= tol.solver_tol * inst.residual_scale()) {
    DualCertificate cert{s.to_vector()};
    for (Eigen::Index j = 0; j < nj; ++j) {
      cert.u(cosupp[static_cast<std::size_t>(j)]) = std::clamp(out.x(j), -1.0, 1.0);
    }
    check.certificate = cert;
  }
  return check;
}

namespace {

Vector soft_threshold(const Vector& v, double kappa) {
  return (v.array() - kappa).cwiseMax(0.0) + (v.array() + kappa).cwiseMin(0.0);
}

SignVector exact_sign(const Vector& z) {
  SignVector s(static_cast<std::size_t>(z.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    s.set(static_cast<std::size_t>(i), z(i) > 0 ? 1 : (z(i) < 0 ? -1 : 0));
  }
  return s;
}

// Minimizes the smooth model 1/2||y - Phi x||^2 + lambda <D s, x> over
// Ker D_J^*, taking the minimum-norm correction from the projection of x.
Vector polish(const ProblemInstance& inst, const SignVector& s, const Vector& x, const Tolerances& tol) {
  const Dictionary& dict = inst.dict();
  const std::vector<int> cosupp = s.cosupport();
  const Matrix basis = cosupp.empty() ? Matrix(Matrix::Identity(inst.n(), inst.n()))
                                      : linalg::null_space_basis(dict.dt_rows(cosupp), tol);
  if (basis.cols() == 0) return Vector::Zero(inst.n());
  const Vector xa = basis * (basis.transpose() * x);
  const Matrix phi_b = inst.phi() * basis;
  const Vector grad = basis.transpose() * (inst.phi().transpose() * (inst.phi() * xa - inst.y()) +
                                           inst.lambda() * dict.synthesis(s));
  const Vector step = linalg::pinv_apply(phi_b.transpose() * phi_b, grad, tol);
  return xa - basis * step;
}

}  // namespace

Vector solve_admm(const ProblemInstance& inst, const AdmmOptions& opts, const Tolerances& tol) {
  const Dictionary& dict = inst.dict();
  const Eigen::Index n = inst.n();
  const Eigen::Index p = dict.p();
  const double rho = opts.rho > 0 ? opts.rho : inst.lambda();
  const double threshold = (opts.tol > 0 ? opts.tol : tol.solver_tol) * inst.residual_scale();
  if (opts.max_iter < 1) throw InputError("max_iter must be positive");

  const Matrix blocks[] = {inst.phi(), dict.dt()};
  const Matrix lineality = linalg::intersect_null_spaces(blocks, tol);
  const Matrix h = inst.phi().transpose() * inst.phi() + rho * dict.d() * dict.dt() +
                   opts.mu * linalg::projector(lineality, n);
  const Eigen::LDLT<Matrix> factor(h);
  if (factor.info() != Eigen::Success) throw InternalError("ADMM system is not factorizable");
  const Vector phit_y = inst.phi().transpose() * inst.y();

  Vector z = Vector::Zero(p), w = Vector::Zero(p), x = Vector::Zero(n);
  if (opts.random_start) {
    std::mt19937_64 rng(*opts.random_start);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < p; ++i) {
      z(i) = normal(rng);
      w(i) = normal(rng);
    }
  }

  double best_residual = std::numeric_limits<double>::infinity();
  auto accept = [&](const Vector& candidate) {
    const double r = optimality_residual(inst, candidate, tol).residual;
    best_residual = std::min(best_residual, r);
    return r <= threshold;
  };

  SignVector pattern = exact_sign(z), attempted;
  int stable = 0;
  bool attempted_any = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    x = factor.solve(phit_y + rho * dict.d() * (z - w));
    const Vector dx = dict.dt() * x;
    z = soft_threshold(dx + w, inst.lambda() / rho);
    w += dx - z;

    const SignVector current = exact_sign(z);
    stable = (current == pattern) ? stable + 1 : 0;
    pattern = current;
    const bool fresh = !attempted_any || pattern != attempted;
    if ((stable >= 10 && fresh) || it % 500 == 0) {
      attempted = pattern;
      attempted_any = true;
      const Vector candidate = polish(inst, pattern, x, tol);
      if (candidate.allFinite() && accept(candidate)) return candidate;
      if (accept(x)) return x;
    }
  }
  std::ostringstream msg;
  msg << "ADMM did not reach stationarity " << threshold << " within " << opts.max_iter
      << " iterations (best residual " << best_residual << ")";
  throw ConvergenceError(msg.str());
}

namespace {

void require_solution(const ProblemInstance& inst, const Vector& x0, const Tolerances& tol) {
  const OptimalityCheck check = optimality_residual(inst, x0, tol);
  if (!check.certificate) {
    std::ostringstream msg;
    msg << "point is not a certified solution (stationarity residual " << check.residual << ")";
    throw PreconditionError(msg.str());
  }
}

}  // namespace

MaximalSign maximal_sign(const ProblemInstance& inst, const Vector& x0, const Tolerances& tol) {
  require_solution(inst, x0, tol);
  const Dictionary& dict = inst.dict();
  const Eigen::Index n = inst.n();
  const Eigen::Index p = dict.p();
  const double r = dict.norm(x0);

  // Every point of this region is a solution.
  lp::Constraints region(n);
  region.add_eq(inst.phi(), inst.phi() * x0);
  lp::add_l1_ball(region, dict.dt(), r);

  MaximalSign result{SignVector(static_cast<std::size_t>(p)), Vector::Zero(n)};
  for (Eigen::Index i = 0; i < p; ++i) {
    const Vector w = dict.dt().row(i).transpose();
    const lp::Outcome hi = lp::maximize(region, w, tol);
    const lp::Outcome lo = lp::minimize(region, w, tol);
    if (!hi.optimal() || !lo.optimal()) throw InternalError("solution-set LP is not solvable");
    const bool positive = hi.value > tol.sign_tol;
    const bool negative = lo.value < -tol.sign_tol;
    if (positive && negative) {
      throw InternalError("analysis coefficient " + std::to_string(i) +
                          " takes both signs on the solution set");
    }
    result.sign.set(static_cast<std::size_t>(i), positive ? 1 : (negative ? -1 : 0));
    result.x_ri += hi.x.head(n) + lo.x.head(n);
  }
  result.x_ri /= static_cast<double>(2 * p);
  if (sign_of(dict.analysis(result.x_ri), tol) != result.sign) {
    throw InternalError("averaged solution does not attain the maximal sign " + result.sign.str());
  }
  return result;
}

lp::Constraints SolutionSetDescription::region() const {
  lp::Constraints region(n());
  region.add_eq(phi, phi_x);
  region.add_eq(cosupport_rows, Vector::Zero(cosupport_rows.rows()));
  region.add_ge(signed_support_rows, Vector::Zero(signed_support_rows.rows()));
  return region;
}

bool SolutionSetDescription::contains(const Vector& x, double tol) const {
  const double scale = 1.0 + x.cwiseAbs().maxCoeff() + (phi_x.size() ? phi_x.cwiseAbs().maxCoeff() : 0.0);
  return region().violation(x) <= tol * scale;
}

SolutionSetDescription describe_solution_set(const ProblemInstance& inst, const Vector& x0,
                                             const Tolerances& tol) {
  const Dictionary& dict = inst.dict();
  const MaximalSign ms = maximal_sign(inst, x0, tol);

  SolutionSetDescription desc;
  desc.x_ri = ms.x_ri;
  desc.max_sign = ms.sign;
  desc.radius = dict.norm(ms.x_ri);
  desc.phi = inst.phi();
  desc.phi_x = inst.phi() * ms.x_ri;
  desc.cosupport_rows = dict.dt_rows(ms.sign.cosupport());
  const std::vector<int> supp = ms.sign.support();
  desc.signed_support_rows = dict.dt_rows(supp);
  for (std::size_t k = 0; k < supp.size(); ++k) {
    desc.signed_support_rows.row(static_cast<Eigen::Index>(k)) *= ms.sign[static_cast<std::size_t>(supp[k])];
  }
  const Matrix dir_blocks[] = {inst.phi(), desc.cosupport_rows};
  desc.dim = linalg::intersect_null_spaces(dir_blocks, tol).cols();
  const Matrix lin_blocks[] = {inst.phi(), dict.dt()};
  desc.compact = linalg::intersect_null_spaces(lin_blocks, tol).cols() == 0;
  return desc;
}

namespace {

bool trivial_kernel(const ProblemInstance& inst, const std::vector<int>& cosupp, const Tolerances& tol) {
  const Matrix blocks[] = {inst.phi(), inst.dict().dt_rows(cosupp)};
  return linalg::intersect_null_spaces(blocks, tol).cols() == 0;
}

// Sub-signs of s_bar: every entry of the support kept or zeroed.
std::vector<SignVector> sub_signs(const SignVector& s_bar, std::size_t cap) {
  const std::vector<int> supp = s_bar.support();
  if (supp.size() > cap) {
    throw InputError("maximal sign has support " + std::to_string(supp.size()) + " above the cap " +
                     std::to_string(cap));
  }
  std::vector<SignVector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << supp.size()); ++mask) {
    SignVector s(s_bar.size());
    for (std::size_t k = 0; k < supp.size(); ++k) {
      if (mask & (std::size_t{1} << k)) {
        const auto i = static_cast<std::size_t>(supp[k]);
        s.set(i, s_bar[i]);
      }
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_extreme_solution(const ProblemInstance& inst, const SolutionSetDescription& desc, const Vector& x,
                         const Tolerances& tol) {
  if (x.size() != inst.n()) throw InputError("is_extreme_solution: vector has wrong length");
  if (!desc.contains(x, std::max(tol.lp_tol, 1e-9))) {
    throw PreconditionError("point does not belong to the solution set");
  }
  const SignVector s = sign_of(inst.dict().analysis(x), tol);
  return trivial_kernel(inst, s.cosupport(), tol);
}

std::vector<Vector> enumerate_extreme_solutions(const ProblemInstance& inst, const SolutionSetDescription& desc,
                                                const Tolerances& tol) {
  if (!desc.compact) {
    throw PreconditionError("the solution set is not compact (Ker Phi and Ker D^* intersect), "
                            "so it has no extreme points");
  }
  std::vector<Vector> points;
  for (const SignVector& s : sub_signs(desc.max_sign, 16)) {
    const std::vector<int> cosupp = s.cosupport();
    if (!trivial_kernel(inst, cosupp, tol)) continue;
    const Matrix dj = inst.dict().dt_rows(cosupp);
    lp::Constraints region = desc.region();
    region.add_eq(dj, Vector::Zero(dj.rows()));
    const lp::Outcome out = lp::solve(lp::LinearProgram{Vector(), region}, tol);
    if (!out.feasible()) continue;
    // The face is the single solution of [Phi; D_J^*] x = [Phi x_ri; 0].
    Matrix system(desc.phi.rows() + dj.rows(), inst.n());
    system << desc.phi, dj;
    Vector rhs(system.rows());
    rhs << desc.phi_x, Vector::Zero(dj.rows());
    Vector x = system.colPivHouseholderQr().solve(rhs);
    const double scale = 1.0 + x.cwiseAbs().maxCoeff();
    x = x.unaryExpr([scale](double v) { return std::abs(v) <= 1e-13 * scale ? 0.0 : v; });
    const bool seen = std::any_of(points.begin(), points.end(), [&](const Vector& q) {
      return (q - x).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + x.cwiseAbs().maxCoeff());
    });
    if (!seen) points.push_back(x);
  }
  std::sort(points.begin(), points.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return points;
}

std::pair<double, double> coordinate_bounds(const SolutionSetDescription& desc, const Vector& w,
                                            const Tolerances& tol) {
  if (w.size() != desc.n()) throw InputError("coordinate_bounds: direction has wrong length");
  const lp::Constraints region = desc.region();
  return {-lp::support(region, -w, tol), lp::support(region, w, tol)};
}

SignPoset solution_hasse(const ProblemInstance& inst, const SolutionSetDescription& desc, const Tolerances& tol) {
  const Eigen::Index n = inst.n();
  std::vector<SignVector> realized;
  for (const SignVector& s : sub_signs(desc.max_sign, 16)) {
    // max t s.t. x in X, D_J^* x = 0, s_i <d_i, x> >= t on supp(s), t <= 1.
    lp::Constraints region = desc.region();
    const Eigen::Index t = region.add_variables(1, false);
    region.add_eq(inst.dict().dt_rows(s.cosupport()), Vector::Zero(static_cast<Eigen::Index>(s.cosupport().size())));
    for (int i : s.support()) {
      RowVector row = RowVector::Zero(n + 1);
      row.head(n) = s[static_cast<std::size_t>(i)] * inst.dict().dt().row(i);
      row(t) = -1.0;
      region.add_ge(row, 0.0);
    }
    RowVector cap = RowVector::Zero(n + 1);
    cap(t) = 1.0;
    region.add_le(cap, 1.0);
    Vector w = Vector::Zero(n + 1);
    w(t) = 1.0;
    const lp::Outcome out = lp::maximize(region, w, tol);
    if (out.optimal() && out.value > tol.sign_tol) realized.push_back(s);
  }
  return poset_cover_edges(std::move(realized));
}

}  // namespace l1geo
