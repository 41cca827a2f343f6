#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "l1geo/linalg.hpp"

namespace l1geo {

/// A vector in {-1, 0, +1}^p. Ordered lexicographically with -1 < 0 < +1.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t p) : entries_(p, 0) {}
  explicit SignVector(std::vector<int> entries);
  SignVector(std::initializer_list<int> entries)
      : SignVector(std::vector<int>(entries)) {}

  /// Parses the compact form over {+, 0, -}, e.g. "+0-".
  static SignVector parse(std::string_view text);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, int value);

  std::vector<int> support() const;
  std::vector<int> cosupport() const;
  std::size_t support_size() const;
  bool is_zero() const { return support_size() == 0; }

  SignVector negated() const;
  Vector to_vector() const;
  std::string str() const;

  auto operator<=>(const SignVector&) const = default;
  bool operator==(const SignVector&) const = default;

 private:
  std::vector<std::int8_t> entries_;
};

/// s <= t in the sign order: every nonzero entry of s is matched in t.
bool leq(const SignVector& s, const SignVector& t);

/// No coordinate where both are nonzero with opposite signs.
bool consistent(const SignVector& s, const SignVector& t);

/// Thresholded sign with the global sign tolerance.
SignVector sign_of(const Vector& v, const Tolerances& tol = {});

/// <s, theta>.
double pairing(const SignVector& s, const Vector& theta);

/// The l1 norm of theta paired with the set of signs attaining it:
/// <s, theta> = ||theta||_1 exactly when sign(theta) <= s.
struct DualPairingMax {
  double value = 0;       ///< ||theta||_1
  SignVector lower_sign;  ///< sign(theta); maximizers are the s above it
  bool attained_by(const SignVector& s) const { return leq(lower_sign, s); }
};
DualPairingMax dual_pairing_max(const Vector& theta, const Tolerances& tol = {});

/// A finite set of signs with its cover relation (transitive reduction of <=).
struct SignPoset {
  std::vector<SignVector> elements;                    // sorted ascending
  std::vector<std::pair<std::size_t, std::size_t>> cover_edges;  // (lower, upper)

  std::vector<std::size_t> minimal_nonzero() const;
  std::vector<std::size_t> maximal() const;
  std::ptrdiff_t index_of(const SignVector& s) const;
};

SignPoset poset_cover_edges(std::vector<SignVector> signs);

}  // namespace l1geo
