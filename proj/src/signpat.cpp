#include "l1geo/signpat.hpp"

#include <algorithm>
#include <cmath>

namespace l1geo {

SignVector::SignVector(std::vector<int> entries) {
  entries_.reserve(entries.size());
  for (int e : entries) {
    if (e < -1 || e > 1) throw InputError("sign entries must lie in {-1,0,1}");
    entries_.push_back(static_cast<std::int8_t>(e));
  }
}

SignVector SignVector::parse(std::string_view text) {
  std::vector<int> e;
  e.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '+': e.push_back(1); break;
      case '-': e.push_back(-1); break;
      case '0': e.push_back(0); break;
      default:
        throw InputError("invalid sign character '" + std::string(1, c) +
                         "' (expected one of +, 0, -)");
    }
  }
  return SignVector(std::move(e));
}

void SignVector::set(std::size_t i, int value) {
  if (value < -1 || value > 1) throw InputError("sign entries must lie in {-1,0,1}");
  entries_.at(i) = static_cast<std::int8_t>(value);
}

std::vector<int> SignVector::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] != 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> SignVector::cosupport() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] == 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::size_t SignVector::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](auto e) { return e != 0; }));
}

SignVector SignVector::negated() const {
  SignVector out = *this;
  for (auto& e : out.entries_) e = static_cast<std::int8_t>(-e);
  return out;
}

Vector SignVector::to_vector() const {
  Vector v(static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries_[i];
  return v;
}

std::string SignVector::str() const {
  std::string out;
  out.reserve(entries_.size());
  for (auto e : entries_) out.push_back(e > 0 ? '+' : (e < 0 ? '-' : '0'));
  return out;
}

namespace {
void require_same_length(const SignVector& s, const SignVector& t) {
  if (s.size() != t.size()) throw InputError("sign vectors have different lengths");
}
}  // namespace

bool leq(const SignVector& s, const SignVector& t) {
  require_same_length(s, t);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0 && t[i] != s[i]) return false;
  }
  return true;
}

bool consistent(const SignVector& s, const SignVector& t) {
  require_same_length(s, t);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0 && t[i] != 0 && s[i] != t[i]) return false;
  }
  return true;
}

SignVector sign_of(const Vector& v, const Tolerances& tol) {
  linalg::require_finite(v, "sign_of");
  SignVector s(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) > tol.sign_tol) {
      s.set(static_cast<std::size_t>(i), 1);
    } else if (v(i) < -tol.sign_tol) {
      s.set(static_cast<std::size_t>(i), -1);
    }
  }
  return s;
}

double pairing(const SignVector& s, const Vector& theta) {
  if (static_cast<Eigen::Index>(s.size()) != theta.size()) {
    throw InputError("pairing: dimension mismatch");
  }
  return s.to_vector().dot(theta);
}

DualPairingMax dual_pairing_max(const Vector& theta, const Tolerances& tol) {
  return {theta.lpNorm<1>(), sign_of(theta, tol)};
}

std::vector<std::size_t> SignPoset::minimal_nonzero() const {
  // Nonzero elements whose only lower covers are the zero sign (or none).
  std::vector<bool> has_nonzero_below(elements.size(), false);
  for (const auto& [lo, hi] : cover_edges) {
    if (!elements[lo].is_zero()) has_nonzero_below[hi] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!elements[i].is_zero() && !has_nonzero_below[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> SignPoset::maximal() const {
  std::vector<bool> has_above(elements.size(), false);
  for (const auto& edge : cover_edges) has_above[edge.first] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!has_above[i]) out.push_back(i);
  }
  return out;
}

std::ptrdiff_t SignPoset::index_of(const SignVector& s) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), s);
  if (it == elements.end() || *it != s) return -1;
  return it - elements.begin();
}

SignPoset poset_cover_edges(std::vector<SignVector> signs) {
  SignPoset poset;
  std::sort(signs.begin(), signs.end());
  signs.erase(std::unique(signs.begin(), signs.end()), signs.end());
  for (std::size_t i = 1; i < signs.size(); ++i) {
    if (signs[i].size() != signs[0].size()) throw InputError("poset_cover_edges: mixed lengths");
  }
  poset.elements = std::move(signs);
  const auto& el = poset.elements;

  // A strict relation s < t forces |supp s| < |supp t|, so the lower covers
  // of t are the maximal elements of {s : s < t}.
  for (std::size_t t = 0; t < el.size(); ++t) {
    std::vector<std::size_t> below;
    for (std::size_t s = 0; s < el.size(); ++s) {
      if (s != t && el[s].support_size() < el[t].support_size() && leq(el[s], el[t])) {
        below.push_back(s);
      }
    }
    for (std::size_t s : below) {
      bool covered = true;
      for (std::size_t u : below) {
        if (u != s && el[u].support_size() > el[s].support_size() && leq(el[s], el[u])) {
          covered = false;
          break;
        }
      }
      if (covered) poset.cover_edges.emplace_back(s, t);
    }
  }
  std::sort(poset.cover_edges.begin(), poset.cover_edges.end());
  return poset;
}

}  // namespace l1geo
