#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fibgirth/word.hpp"

namespace fibgirth {

/// Largest truncation degree accepted without an explicit opt-in.
inline constexpr int kDefaultMagnusCap = 14;
inline constexpr int kSafeMagnusCap = 20;
inline constexpr int kHardMagnusCap = 40;

/// A monomial in the noncommuting variables X, Y. The first variable is the
/// most significant bit of `bits` (X = 0, Y = 1), so ordering by
/// (degree, bits) is ordering by degree and then lexicographically.
struct Monomial {
  std::uint32_t degree = 0;
  std::uint64_t bits = 0;

  static Monomial parse(const std::string& text);  // "1", "X", "XYY", ...
  std::string to_string() const;

  Monomial append(bool y) const { return {degree + 1, (bits << 1) | (y ? 1u : 0u)}; }
  friend Monomial operator*(Monomial p, Monomial q) {
    return {p.degree + q.degree, (p.bits << q.degree) | q.bits};
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Noncommutative polynomial in X, Y with exact integer coefficients,
/// truncated above degree `cap`. Terms are kept sorted with no zeros.
class TruncatedSeries {
 public:
  using Term = std::pair<Monomial, mpz_class>;

  explicit TruncatedSeries(int cap);
  static TruncatedSeries one(int cap);
  static TruncatedSeries from_terms(int cap, std::vector<Term> terms);

  int cap() const { return cap_; }
  const std::vector<Term>& terms() const { return terms_; }
  mpz_class coefficient(Monomial m) const;

  /// Lowest degree >= 1 carrying a nonzero coefficient, if any.
  std::optional<int> lowest_nonconstant_degree() const;

  /// Right multiplication by the Magnus image of a single letter.
  void multiply_by_letter(Letter x);

  friend TruncatedSeries operator+(const TruncatedSeries& s, const TruncatedSeries& t);
  friend TruncatedSeries operator-(const TruncatedSeries& s, const TruncatedSeries& t);
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  std::string to_string() const;

 private:
  int cap_;
  std::vector<Term> terms_;
};

TruncatedSeries generator_series(Letter x, int cap);
TruncatedSeries mul(const TruncatedSeries& s1, const TruncatedSeries& s2, int cap);
TruncatedSeries magnus_expand(const Word& w, int cap);

struct DepthResult {
  enum class Kind { Identity, Exact, AtLeast };
  Kind kind = Kind::Identity;
  int value = 0;  // n for Exact, m for AtLeast, unused for Identity

  static DepthResult identity() { return {Kind::Identity, 0}; }
  static DepthResult exact(int n) { return {Kind::Exact, n}; }
  static DepthResult at_least(int m) { return {Kind::AtLeast, m}; }

  /// Whether w lies in gamma_n according to this result.
  bool member_of(int n) const { return kind == Kind::Identity || value >= n; }
  std::string to_string() const;
  friend bool operator==(const DepthResult&, const DepthResult&) = default;
};

/// Throws std::invalid_argument for cap < 1 or cap > kHardMagnusCap, and for
/// cap > kSafeMagnusCap unless allow_large_cap is set.
DepthResult lcs_depth(const Word& w, int cap, bool allow_large_cap = false);
bool lcs_member(const Word& w, int n);

/// Membership test for a fixed gamma_n using dense 64-bit coefficients. Falls
/// back to the exact path if any coefficient would overflow. Reusable across
/// words; not thread-safe (one probe per thread).
class MembershipProbe {
 public:
  explicit MembershipProbe(int n);
  bool operator()(std::span<const Letter> letters);
  int n() const { return n_; }

 private:
  int n_;
  int cap_;
  std::vector<std::int64_t> coeff_;
  bool run(std::span<const Letter> letters, bool& overflow);
};

}  // namespace fibgirth
