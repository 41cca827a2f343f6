#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace l1geo;
using namespace l1geo::testing;

namespace {

std::vector<SignVector> all_signs(std::size_t p) {
  std::vector<SignVector> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < p; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    SignVector s(p);
    std::size_t c = code;
    for (std::size_t i = p; i-- > 0; c /= 3) s.set(i, static_cast<int>(c % 3) - 1);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("text form") {
  const SignVector s = SignVector::parse("+0-");
  CHECK(s.size() == 3);
  CHECK(s[0] == 1);
  CHECK(s[1] == 0);
  CHECK(s[2] == -1);
  CHECK(s.str() == "+0-");
  CHECK(s.support() == std::vector<int>{0, 2});
  CHECK(s.cosupport() == std::vector<int>{1});
  CHECK(s.negated().str() == "-0+");
  CHECK_THROWS_AS(SignVector::parse("+x"), InputError);
  CHECK_THROWS_AS((SignVector{2, 0}), InputError);
  CHECK(SignVector::parse("").size() == 0);
}

TEST_CASE("lexicographic order puts -1 before 0 before +1") {
  CHECK(SignVector::parse("-+") < SignVector::parse("0-"));
  CHECK(SignVector::parse("0+") < SignVector::parse("+-"));
}

TEST_CASE("sign order") {
  CHECK(leq(SignVector{0, 1, 0}, SignVector{1, 1, 1}));
  CHECK_FALSE(leq(SignVector{1, 0}, SignVector{-1, 0}));
  for (const auto& s : all_signs(3)) CHECK(leq(s, s));
  CHECK_THROWS_AS(leq(SignVector{1}, SignVector{1, 0}), InputError);
}

TEST_CASE("sign order is a partial order on {-1,0,1}^3") {
  const auto signs = all_signs(3);
  for (const auto& a : signs) {
    for (const auto& b : signs) {
      if (leq(a, b) && leq(b, a)) CHECK(a == b);
      for (const auto& c : signs) {
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
      }
    }
  }
}

TEST_CASE("consistency") {
  CHECK(consistent(SignVector{1, 0, -1}, SignVector{0, 1, -1}));
  CHECK_FALSE(consistent(SignVector{1, 0}, SignVector{-1, 1}));
  for (const auto& s : all_signs(3)) CHECK(consistent(s, SignVector(3)));
}

TEST_CASE("thresholded sign") {
  CHECK(sign_of(setting3d_dt() * vec({0, 0.25, 0.25})) == SignVector{1, 1, 1});
  CHECK(sign_of(Vector::Zero(4)).is_zero());
  const Dictionary tv = dict::difference_dict(3);
  CHECK(sign_of(tv.analysis(vec({1, 1, 2}))) == SignVector{0, 1});
  CHECK(sign_of(vec({1e-9, -1e-9, 2e-8, -2e-8})) == SignVector{0, 0, 1, -1});
  CHECK_THROWS_AS(sign_of(vec({NAN})), InputError);
}

TEST_CASE("pairing bound") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    Vector theta(3);
    for (int i = 0; i < 3; ++i) theta(i) = trial % 2 ? normal(rng) : std::round(normal(rng));
    const DualPairingMax best = dual_pairing_max(theta);
    CHECK(best.value == doctest::Approx(theta.lpNorm<1>()));
    for (const auto& s : all_signs(3)) {
      const double v = pairing(s, theta);
      CHECK(v <= best.value + 1e-12);
      // equality exactly for the signs above sign(theta)
      CHECK((std::abs(v - best.value) <= 1e-12) == best.attained_by(s));
    }
  }
}

TEST_CASE("cover edges of a poset") {
  const SignPoset all = poset_cover_edges(all_signs(2));
  CHECK(all.elements.size() == 9);
  // each nonzero sign of support k covers exactly k signs
  CHECK(all.cover_edges.size() == 4 * 1 + 4 * 2);
  for (const auto& [lo, hi] : all.cover_edges) CHECK(leq(all.elements[lo], all.elements[hi]));
  CHECK(all.minimal_nonzero().size() == 4);
  CHECK(all.maximal().size() == 4);

  const SignPoset chain = poset_cover_edges({SignVector{1, 1, 1}, SignVector{1, 0, 0}, SignVector{1, 1, 0}});
  CHECK(chain.cover_edges.size() == 2);
  CHECK(chain.index_of(SignVector{1, 1, 0}) == 1);
  CHECK(chain.index_of(SignVector{0, 0, 0}) == -1);
}

TEST_CASE("transitive closure of the cover edges is the sign order") {
  std::mt19937_64 rng(5);
  auto signs = all_signs(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(signs.begin(), signs.end(), rng);
    const std::vector<SignVector> subset(signs.begin(), signs.begin() + 12);
    const SignPoset poset = poset_cover_edges(subset);
    const std::size_t m = poset.elements.size();
    std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) reach[i][i] = true;
    for (const auto& [lo, hi] : poset.cover_edges) {
      CHECK(lo != hi);
      reach[lo][hi] = true;
    }
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) CHECK(reach[i][j] == leq(poset.elements[i], poset.elements[j]));
    }
    // no edge is implied by a path through a third element
    for (const auto& [lo, hi] : poset.cover_edges) {
      for (std::size_t k = 0; k < m; ++k) {
        if (k != lo && k != hi) CHECK_FALSE((leq(poset.elements[lo], poset.elements[k]) && leq(poset.elements[k], poset.elements[hi])));
      }
    }
  }
}
