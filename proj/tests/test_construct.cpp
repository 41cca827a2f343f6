#include <doctest.h>

#include "l1geo/construct.hpp"
#include "support.hpp"

using namespace l1geo;
using namespace l1geo::testing;

namespace {

AffineSubspace tv3_plane() { return AffineSubspace::from_normals(Vector::Ones(3), Matrix(Vector::Unit(3, 1))); }

AffineSubspace tv3_segment_hull() { return AffineSubspace::affine_hull({vec({1, 1, 2}), vec({2, 1, 1})}); }

}  // namespace

TEST_CASE("affine subspaces") {
  const AffineSubspace a = tv3_plane();
  CHECK(a.dim() == 2);
  CHECK(a.normal_basis.cols() == 1);
  CHECK(a.normal_basis.col(0) == Vector::Unit(3, 1));
  CHECK(max_abs(a.direction_basis.transpose() * a.normal_basis) < 1e-12);

  const AffineSubspace s = tv3_segment_hull();
  CHECK(s.dim() == 1);
  CHECK(linalg::same_span(s.direction_basis, vec({1, 0, -1}), 3));
  CHECK(lp::is_feasible(s.region()));

  const AffineSubspace whole = AffineSubspace::from_directions(Vector::Zero(2), Matrix::Identity(2, 2));
  CHECK(whole.dim() == 2);
  CHECK(whole.normal_basis.cols() == 0);
  CHECK(AffineSubspace::affine_hull({vec({1, 2})}).dim() == 0);
  CHECK_THROWS_AS(AffineSubspace::affine_hull({}), InputError);
  CHECK_THROWS_AS(AffineSubspace::from_normals(Vector::Zero(2), Matrix::Identity(3, 1)), InputError);
}

TEST_CASE("sphere condition") {
  const Dictionary tv = dict::difference_dict(3);
  CHECK_FALSE(check_sphere_condition(tv, tv3_plane(), 1.0));
  CHECK(sphere_contact(tv, tv3_plane()).min_norm == doctest::Approx(0).scale(1));
  CHECK(check_sphere_condition(tv, tv3_segment_hull(), 1.0));

  // a supporting hyperplane of a feasible sign
  const SignVector s{-1, 1};
  const Vector ds = tv.synthesis(s);
  const AffineSubspace tangent = AffineSubspace::from_normals(vec({1, 1, 2}), Matrix(ds));
  CHECK(check_sphere_condition(tv, tangent, 1.0));
  CHECK_FALSE(check_sphere_condition(tv, tangent, 0.5));

  const AffineSubspace constants = AffineSubspace::from_directions(Vector::Zero(3), Matrix(Vector::Ones(3)));
  CHECK(check_sphere_condition(tv, constants, 0.0));
}

TEST_CASE("face construction reproduces the TV-3 instance") {
  const Dictionary tv = dict::difference_dict(3);
  const ConstructedInstance ci = construct_arbitrary_face(tv, SignVector{-1, 1}, 1.0, tv3_plane(), 1.0);
  Matrix phi(2, 3);
  phi << 1, -2, 1, 0, 1, 0;
  CHECK(ci.inst.phi() == phi);
  CHECK(ci.inst.y() == vec({2, 1}));
  CHECK(ci.certificate.u == vec({-1, 1}));
  CHECK(optimality_residual(ci.inst, vec({1, 1, 2})).residual < 1e-12);

  const VerificationReport rep = verify_construction(ci);
  CHECK(rep.pass);
  CHECK(rep.kernel_ok);
  CHECK(rep.certificate_ok);
  CHECK(rep.max_support_gap <= 1e-6);
  REQUIRE(rep.extreme_points.size() == 2);
  CHECK((rep.extreme_points[0] - vec({1, 1, 2})).norm() < 1e-6);
  CHECK((rep.extreme_points[1] - vec({2, 1, 1})).norm() < 1e-6);

  const ConstructedInstance two = construct_arbitrary_face(tv, SignVector{-1, 1}, 1.0, tv3_plane(), 2.0);
  CHECK(two.inst.phi() == phi);
  CHECK(two.inst.y() == vec({3, 1}));
  CHECK(verify_construction(two).pass);
}

TEST_CASE("the whole face as solution set") {
  const Dictionary tv = dict::difference_dict(3);
  const AffineSubspace everything = AffineSubspace::from_directions(Vector::Zero(3), Matrix::Identity(3, 3));
  const ConstructedInstance ci = construct_arbitrary_face(tv, SignVector{-1, 1}, 1.0, everything, 1.0);
  CHECK(ci.inst.phi().rows() == 1);
  CHECK(ci.inst.phi().row(0) == RowVector{{1, -2, 1}});
  const VerificationReport rep = verify_construction(ci);
  CHECK(rep.pass);
  CHECK_FALSE(rep.recovered.compact);
  CHECK(rep.recovered.dim == 2);
}

TEST_CASE("face construction rejects empty intersections") {
  const Dictionary tv = dict::difference_dict(3);
  const AffineSubspace far = AffineSubspace::from_normals(vec({0, 5, 0}), Matrix(Matrix::Identity(3, 3).leftCols(2)));
  CHECK_THROWS_AS(construct_arbitrary_face(tv, SignVector{-1, 1}, 1.0, far, 1.0), PreconditionError);
  CHECK_THROWS_AS(construct_arbitrary_face(tv, SignVector{-1, 1}, 1.0, tv3_plane(), 0.0), InputError);
}

TEST_CASE("random face constructions round trip") {
  std::mt19937_64 rng(51);
  int built = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Dictionary d(random_matrix(3, 4, rng));
    const auto signs = enumerate_feasible_signs(d);
    const SignVector s = signs[std::uniform_int_distribution<std::size_t>(0, signs.size() - 1)(rng)];
    if (s.is_zero()) continue;
    const FeasibilityVerdict v = is_feasible(d, s);
    const Vector x = v.witness / d.norm(v.witness);
    const int k = 1 + trial % 2;
    const AffineSubspace a = AffineSubspace::from_directions(x, random_matrix(3, k, rng));
    const ConstructedInstance ci = construct_arbitrary_face(d, s, 1.0, a, 0.3 + trial % 3);
    const VerificationReport rep = verify_construction(ci);
    CHECK(rep.pass);
    CHECK(leq(rep.recovered.max_sign, s));
    // Ker Phi = (D s)^perp cap dir(A)
    const Matrix expected = linalg::intersect_null_spaces({Matrix(d.synthesis(s).transpose()), Matrix(a.normal_basis.transpose())});
    CHECK(linalg::same_span(linalg::null_space_basis(ci.inst.phi()), expected, 3));
    ++built;
  }
  CHECK(built > 20);
}

TEST_CASE("theorem construction on the segment hull") {
  const Dictionary tv = dict::difference_dict(3);
  const AffineSubspace a = tv3_segment_hull();
  const ConstructedInstance ci = construct_theorem_arb(tv, a, 1.0, 1.0);
  const Matrix ker = linalg::null_space_basis(ci.inst.phi());
  CHECK(ker.cols() == a.dim());
  CHECK(linalg::same_span(ker, vec({1, 0, -1}), 3));

  // alpha certificate
  double total = 0;
  Vector combo = Vector::Zero(tv.n());
  Vector u = Vector::Zero(tv.p());
  for (const auto& [s, alpha] : ci.alphas) {
    CHECK(alpha >= 0);
    CHECK(leq(ci.base_sign, s));
    total += alpha;
    combo += alpha * tv.synthesis(s);
    u += alpha * s.to_vector();
  }
  CHECK(total == doctest::Approx(1));
  CHECK(max_abs(ci.inst.phi().transpose() * ci.beta - combo) <= 1e-9);
  CHECK(max_abs(u - ci.certificate.u) <= 1e-9);
  for (int i : ci.base_sign.support()) CHECK(u(i) == doctest::Approx(ci.base_sign[static_cast<std::size_t>(i)]));
  CHECK(u.lpNorm<Eigen::Infinity>() <= 1 + 1e-9);

  const VerificationReport rep = verify_construction(ci);
  CHECK(rep.pass);
  REQUIRE(rep.extreme_points.size() == 2);
  CHECK((rep.extreme_points[0] - vec({1, 1, 2})).norm() < 1e-6);
  CHECK((rep.extreme_points[1] - vec({2, 1, 1})).norm() < 1e-6);
}

TEST_CASE("theorem construction edge cases") {
  const Dictionary tv = dict::difference_dict(3);
  const AffineSubspace constants = AffineSubspace::from_directions(Vector::Zero(3), Matrix(Vector::Ones(3)));
  const ConstructedInstance zero = construct_theorem_arb(tv, constants, 0.0, 1.0);
  CHECK(zero.certificate.u.isZero());
  const VerificationReport rz = verify_construction(zero);
  CHECK(rz.pass);
  CHECK_FALSE(rz.recovered.compact);

  const AffineSubspace point = AffineSubspace::affine_hull({vec({1, 1, 2})});
  const ConstructedInstance single = construct_theorem_arb(tv, point, 1.0, 0.5);
  const VerificationReport rs = verify_construction(single);
  CHECK(rs.pass);
  CHECK(rs.recovered.dim == 0);

  CHECK_THROWS_AS(construct_theorem_arb(tv, tv3_plane(), 1.0, 1.0), PreconditionError);
}

TEST_CASE("theorem construction on random tangent subspaces") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 15; ++trial) {
    const Dictionary d = trial % 2 ? k4() : Dictionary(random_matrix(3, 4, rng));
    const auto signs = enumerate_feasible_signs(d);
    const SignVector s = signs[std::uniform_int_distribution<std::size_t>(0, signs.size() - 1)(rng)];
    if (s.is_zero()) continue;
    const Face f = face_from_sign(d, s, 2.0);
    // a random line inside the face's affine hull through a relative interior point
    const FeasibilityVerdict v = is_feasible(d, s);
    const Vector x = 2.0 * v.witness / d.norm(v.witness);
    Matrix dir = f.direction_basis * random_matrix(f.dim(), 1, rng);
    const AffineSubspace a = AffineSubspace::from_directions(x, dir);
    REQUIRE(check_sphere_condition(d, a, 2.0));
    const ConstructedInstance ci = construct_theorem_arb(d, a, 2.0, 1.0);
    CHECK(linalg::null_space_basis(ci.inst.phi()).cols() == a.dim());
    CHECK(verify_construction(ci).pass);
  }
}

TEST_CASE("verification detects a corrupted instance") {
  const Dictionary tv = dict::difference_dict(3);
  ConstructedInstance ci = construct_arbitrary_face(tv, SignVector{-1, 1}, 1.0, tv3_plane(), 1.0);
  ci.inst = ProblemInstance(ci.inst.dict(), ci.inst.phi(), ci.inst.y() + 0.1 * Vector::Unit(2, 0), 1.0);
  const VerificationReport rep = verify_construction(ci);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_support_gap > 1e-3);
  CHECK_FALSE(rep.failures.empty());
}
