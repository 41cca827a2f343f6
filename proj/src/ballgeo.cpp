#include "l1geo/ballgeo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <set>
#include <sstream>

namespace l1geo {

Dictionary::Dictionary(Matrix d, const Tolerances& tol) : d_(std::move(d)) {
  tol.validate();
  if (d_.rows() < 1 || d_.cols() < 1) throw InputError("dictionary must be at least 1x1");
  linalg::require_finite(d_, "dictionary");
  dt_ = d_.transpose();
  ker_dt_ = linalg::null_space_basis(dt_, tol);
  ker_d_ = linalg::null_space_basis(d_, tol);
  range_projector_ = Matrix::Identity(n(), n()) - linalg::projector(ker_dt_, n());
}

Vector Dictionary::analysis(const Vector& x) const {
  if (x.size() != n()) throw InputError("analysis: vector has wrong length");
  return dt_ * x;
}

Vector Dictionary::synthesis(const SignVector& s) const {
  if (static_cast<Eigen::Index>(s.size()) != p()) throw InputError("synthesis: sign has wrong length");
  return d_ * s.to_vector();
}

Matrix Dictionary::dt_rows(const std::vector<int>& rows) const {
  return linalg::select_rows(dt_, rows);
}

namespace {

void require_length(const Dictionary& dict, const SignVector& s) {
  if (static_cast<Eigen::Index>(s.size()) != dict.p()) {
    throw InputError("sign of length " + std::to_string(s.size()) + " for a dictionary with p = " +
                     std::to_string(dict.p()));
  }
}

std::size_t pow3(std::size_t p) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < p; ++i) r *= 3;
  return r;
}

// Face data without the direction basis.
Face assemble_face(const Dictionary& dict, const SignVector& s, double radius) {
  Face f;
  f.radius = radius;
  f.max_sign = s;
  f.normal = dict.synthesis(s);
  f.cosupport_rows = dict.dt_rows(s.cosupport());
  const std::vector<int> supp = s.support();
  f.signed_support_rows = dict.dt_rows(supp);
  for (std::size_t k = 0; k < supp.size(); ++k) {
    f.signed_support_rows.row(static_cast<Eigen::Index>(k)) *= s[static_cast<std::size_t>(supp[k])];
  }
  return f;
}

SignVector decode(std::size_t code, std::size_t p) {
  SignVector s(p);
  for (std::size_t i = p; i-- > 0;) {
    s.set(i, static_cast<int>(code % 3) - 1);
    code /= 3;
  }
  return s;
}

}  // namespace

lp::Constraints feasibility_region(const Dictionary& dict, const SignVector& s) {
  require_length(dict, s);
  lp::Constraints region(dict.n());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const RowVector row = dict.dt().row(static_cast<Eigen::Index>(i));
    if (s[i] == 0) {
      region.add_eq(row, 0.0);
    } else {
      region.add_ge(s[i] * row, 1.0);
    }
  }
  return region;
}

FeasibilityVerdict is_feasible(const Dictionary& dict, const SignVector& s,
                               const std::optional<Vector>& c, const Tolerances& tol) {
  const lp::Constraints region = feasibility_region(dict, s);
  lp::LinearProgram program{c.value_or(Vector::Zero(dict.n())), region};
  if (program.objective.size() != dict.n()) throw InputError("is_feasible: objective has wrong length");
  const lp::Outcome out = lp::solve(program, tol);

  FeasibilityVerdict verdict;
  if (!out.feasible()) {
    verdict.farkas_eq = out.farkas_eq;
    verdict.farkas_le = out.farkas_le;
    return verdict;
  }
  verdict.feasible = true;
  verdict.witness = out.x;
  if (sign_of(dict.analysis(out.x), tol) != s) {
    throw InternalError("feasibility witness does not realize sign " + s.str());
  }
  return verdict;
}

std::vector<SignVector> enumerate_feasible_signs(const Dictionary& dict,
                                                 const EnumerationOptions& opts,
                                                 const Tolerances& tol) {
  const auto p = static_cast<std::size_t>(dict.p());
  if (p > opts.max_p) {
    throw InputError("enumeration refused: p = " + std::to_string(p) + " exceeds the cap of " +
                     std::to_string(opts.max_p) + " (3^p linear programs)");
  }
  const std::size_t total = pow3(p);
  const std::size_t middle = (total - 1) / 2;  // the zero sign; codes above mirror codes below
  std::vector<char> feasible(total, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t code = begin; code < end; ++code) {
      feasible[code] = is_feasible(dict, decode(code, p), std::nullopt, tol).feasible ? 1 : 0;
    }
  };
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    work(0, middle + 1);
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (middle + threads) / threads;
    for (std::size_t begin = 0; begin <= middle; begin += chunk) {
      jobs.push_back(std::async(std::launch::async, work, begin, std::min(middle + 1, begin + chunk)));
    }
    for (auto& j : jobs) j.get();
  }
  for (std::size_t code = middle + 1; code < total; ++code) feasible[code] = feasible[total - 1 - code];

  std::vector<SignVector> out;
  for (std::size_t code = 0; code < total; ++code) {
    if (feasible[code]) out.push_back(decode(code, p));
  }
  return out;
}

Matrix quotient_face_directions(const Dictionary& dict, const SignVector& s, const Tolerances& tol) {
  require_length(dict, s);
  const Matrix blocks[] = {dict.ker_dt().transpose(), dict.synthesis(s).transpose(),
                           dict.dt_rows(s.cosupport())};
  return linalg::intersect_null_spaces(blocks, tol);
}

bool is_pre_extremal(const Dictionary& dict, const SignVector& s, const Tolerances& tol) {
  return quotient_face_directions(dict, s, tol).cols() == 0;
}

bool is_extremal(const Dictionary& dict, const SignVector& s, const Tolerances& tol) {
  require_length(dict, s);
  return !s.is_zero() && is_pre_extremal(dict, s, tol) && is_feasible(dict, s, std::nullopt, tol).feasible;
}

lp::Constraints Face::hrep() const {
  const Eigen::Index n = normal.size();
  lp::Constraints region(n);
  region.add_eq(normal.transpose(), radius);
  region.add_eq(cosupport_rows, Vector::Zero(cosupport_rows.rows()));
  region.add_ge(signed_support_rows, Vector::Zero(signed_support_rows.rows()));
  return region;
}

bool Face::contains(const Vector& x, double tol) const {
  const double scale = 1.0 + x.cwiseAbs().maxCoeff();
  return hrep().violation(x) <= tol * scale;
}

Face face_from_sign(const Dictionary& dict, const SignVector& s, double radius, const Tolerances& tol) {
  require_length(dict, s);
  if (!(radius > 0) || !std::isfinite(radius)) throw InputError("face radius must be positive");
  if (s.is_zero()) throw PreconditionError("the zero sign defines no face of a sphere of positive radius");
  if (!is_feasible(dict, s, std::nullopt, tol).feasible) {
    throw PreconditionError("sign " + s.str() + " is not feasible; its face is empty");
  }
  Face f = assemble_face(dict, s, radius);
  const Matrix blocks[] = {f.normal.transpose(), f.cosupport_rows};
  f.direction_basis = linalg::intersect_null_spaces(blocks, tol);
  return f;
}

Face minimal_face_of_point(const Dictionary& dict, const Vector& x, const Tolerances& tol) {
  const Vector theta = dict.analysis(x);
  const double r = theta.lpNorm<1>();
  const SignVector s = sign_of(theta, tol);
  if (!(r > 0) || s.is_zero()) throw PreconditionError("point lies in Ker D^*; it is on no proper face");
  return face_from_sign(dict, s, r, tol);
}

bool face_contains(const Face& inner, const Face& outer) {
  // Faces of different spheres are disjoint.
  if (std::abs(inner.radius - outer.radius) > 1e-12 * std::max(1.0, outer.radius)) return false;
  return leq(inner.max_sign, outer.max_sign);
}

lp::Constraints quotient_face_region(const Dictionary& dict, const SignVector& s, double radius) {
  require_length(dict, s);
  const Face f = assemble_face(dict, s, radius);
  lp::Constraints region = f.hrep();
  region.add_eq(dict.ker_dt().transpose(), Vector::Zero(dict.ker_dt().cols()));
  return region;
}

HasseDiagram hasse_diagram(const Dictionary& dict, const EnumerationOptions& opts, const Tolerances& tol) {
  HasseDiagram h;
  h.poset = poset_cover_edges(enumerate_feasible_signs(dict, opts, tol));
  const std::size_t count = h.poset.elements.size();
  h.face_dim.resize(count);
  h.extremal.assign(count, false);
  h.maximal.assign(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    const SignVector& s = h.poset.elements[i];
    if (s.is_zero()) {
      h.face_dim[i] = dict.ker_dt().cols();
    } else {
      const Matrix blocks[] = {dict.synthesis(s).transpose(), dict.dt_rows(s.cosupport())};
      h.face_dim[i] = linalg::intersect_null_spaces(blocks, tol).cols();
    }
  }
  for (std::size_t i : h.poset.minimal_nonzero()) h.extremal[i] = true;
  for (std::size_t i : h.poset.maximal()) h.maximal[i] = true;
  return h;
}

std::string to_dot(const HasseDiagram& h) {
  std::ostringstream out;
  out << "digraph feasible_signs {\n";
  out << "  rankdir=BT;\n";
  for (std::size_t i = 0; i < h.poset.elements.size(); ++i) {
    out << "  n" << i << " [label=\"" << h.poset.elements[i].str() << "\\ndim " << h.face_dim[i] << "\"";
    std::string cls;
    if (h.extremal[i]) cls = "extremal";
    if (h.maximal[i]) cls += cls.empty() ? "maximal" : " maximal";
    if (!cls.empty()) out << ", class=\"" << cls << "\"";
    out << "];\n";
  }
  for (const auto& [lo, hi] : h.poset.cover_edges) {
    out << "  n" << lo << " -> n" << hi << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<SignVector> brute_force_feasible_signs(const Dictionary& dict,
                                                   std::size_t samples_per_stratum,
                                                   std::uint64_t seed, const Tolerances& tol) {
  const auto p = static_cast<std::size_t>(dict.p());
  if (p > 10) throw InputError("brute-force oracle is limited to p <= 10");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::set<SignVector> found;
  for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
    std::vector<int> cosupport;
    for (std::size_t i = 0; i < p; ++i) {
      if (mask & (std::size_t{1} << i)) cosupport.push_back(static_cast<int>(i));
    }
    const Matrix basis = cosupport.empty() ? Matrix(Matrix::Identity(dict.n(), dict.n()))
                                           : linalg::null_space_basis(dict.dt_rows(cosupport), tol);
    if (basis.cols() == 0) {
      found.insert(SignVector(p));
      continue;
    }
    for (std::size_t k = 0; k < samples_per_stratum; ++k) {
      Vector coeffs(basis.cols());
      for (Eigen::Index j = 0; j < coeffs.size(); ++j) coeffs(j) = normal(rng);
      found.insert(sign_of(dict.analysis(basis * coeffs), tol));
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace l1geo
