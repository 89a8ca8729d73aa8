#include "fibgirth/magnus.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibgirth {
namespace {

using Term = TruncatedSeries::Term;
using Bucket = std::vector<Term>;

Monomial variable_power(bool y, int j) {
  Monomial m;
  m.degree = static_cast<std::uint32_t>(j);
  m.bits = y ? ((std::uint64_t{1} << j) - 1) : 0;
  return m;
}

// Merges two same-degree sorted buckets: lhs + sign * rhs, dropping zeros.
Bucket merge(Bucket&& lhs, const Bucket& rhs, bool y, int sign) {
  Bucket out;
  out.reserve(lhs.size() + rhs.size());
  std::size_t i = 0, j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j == rhs.size()) {
      out.push_back(std::move(lhs[i++]));
      continue;
    }
    Monomial shifted = rhs[j].first.append(y);
    if (i < lhs.size() && lhs[i].first < shifted) {
      out.push_back(std::move(lhs[i++]));
    } else if (i < lhs.size() && lhs[i].first == shifted) {
      mpz_class c = std::move(lhs[i++].second);
      if (sign > 0) c += rhs[j++].second; else c -= rhs[j++].second;
      if (c != 0) out.emplace_back(shifted, std::move(c));
    } else {
      mpz_class c = rhs[j++].second;
      if (sign < 0) c = -c;
      out.emplace_back(shifted, std::move(c));
    }
  }
  return out;
}

std::vector<Bucket> to_buckets(std::vector<Term>&& terms, int cap) {
  std::vector<Bucket> buckets(static_cast<std::size_t>(cap) + 1);
  for (auto& t : terms) buckets[t.first.degree].push_back(std::move(t));
  return buckets;
}

std::vector<Term> flatten(std::vector<Bucket>&& buckets) {
  std::vector<Term> terms;
  std::size_t total = 0;
  for (const auto& b : buckets) total += b.size();
  terms.reserve(total);
  for (auto& b : buckets)
    for (auto& t : b) terms.push_back(std::move(t));
  return terms;
}

// Right multiplication of bucketed terms by the image of x, truncated at cap.
void multiply_buckets(std::vector<Bucket>& buckets, Letter x) {
  const bool y = !is_generator_a(x);
  const int cap = static_cast<int>(buckets.size()) - 1;
  if (is_positive(x)) {
    // s * (1 + V): new_d = s_d + s_{d-1} V, descending so s_{d-1} is still old.
    for (int d = cap; d >= 1; --d)
      if (!buckets[d - 1].empty())
        buckets[d] = merge(std::move(buckets[d]), buckets[d - 1], y, +1);
  } else {
    // t = s * (1 + V)^-1 satisfies t = s - t V: new_d = s_d - new_{d-1} V.
    for (int d = 1; d <= cap; ++d)
      if (!buckets[d - 1].empty())
        buckets[d] = merge(std::move(buckets[d]), buckets[d - 1], y, -1);
  }
}

void check_cap(int cap) {
  if (cap < 1) throw std::invalid_argument("Magnus cap must be at least 1");
  if (cap > kHardMagnusCap)
    throw std::invalid_argument("Magnus cap " + std::to_string(cap) + " exceeds the hard limit " +
                                std::to_string(kHardMagnusCap));
}

}  // namespace

Monomial Monomial::parse(const std::string& text) {
  Monomial m;
  if (text == "1") return m;
  for (char c : text) {
    if (c != 'X' && c != 'Y') throw std::invalid_argument("bad monomial '" + text + "'");
    m = m.append(c == 'Y');
  }
  return m;
}

std::string Monomial::to_string() const {
  if (degree == 0) return "1";
  std::string s;
  for (int i = static_cast<int>(degree) - 1; i >= 0; --i) s.push_back((bits >> i) & 1u ? 'Y' : 'X');
  return s;
}

TruncatedSeries::TruncatedSeries(int cap) : cap_(cap) { check_cap(cap); }

TruncatedSeries TruncatedSeries::one(int cap) {
  TruncatedSeries s(cap);
  s.terms_.emplace_back(Monomial{}, mpz_class(1));
  return s;
}

TruncatedSeries TruncatedSeries::from_terms(int cap, std::vector<Term> terms) {
  TruncatedSeries s(cap);
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  for (auto& t : terms) {
    if (static_cast<int>(t.first.degree) > cap) continue;
    if (!s.terms_.empty() && s.terms_.back().first == t.first)
      s.terms_.back().second += t.second;
    else
      s.terms_.push_back(std::move(t));
    if (s.terms_.back().second == 0) s.terms_.pop_back();
  }
  return s;
}

mpz_class TruncatedSeries::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  return it != terms_.end() && it->first == m ? it->second : mpz_class(0);
}

std::optional<int> TruncatedSeries::lowest_nonconstant_degree() const {
  for (const auto& t : terms_)
    if (t.first.degree >= 1) return static_cast<int>(t.first.degree);
  return std::nullopt;
}

void TruncatedSeries::multiply_by_letter(Letter x) {
  auto buckets = to_buckets(std::move(terms_), cap_);
  multiply_buckets(buckets, x);
  terms_ = flatten(std::move(buckets));
}

TruncatedSeries operator+(const TruncatedSeries& s, const TruncatedSeries& t) {
  if (s.cap_ != t.cap_) throw std::invalid_argument("series caps differ");
  std::vector<Term> all(s.terms_);
  all.insert(all.end(), t.terms_.begin(), t.terms_.end());
  return TruncatedSeries::from_terms(s.cap_, std::move(all));
}

TruncatedSeries operator-(const TruncatedSeries& s, const TruncatedSeries& t) {
  if (s.cap_ != t.cap_) throw std::invalid_argument("series caps differ");
  std::vector<Term> all(s.terms_);
  for (const auto& [m, c] : t.terms_) all.emplace_back(m, -c);
  return TruncatedSeries::from_terms(s.cap_, std::move(all));
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    bool negative = c < 0;
    mpz_class magnitude = abs(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (m.degree == 0)
      out += magnitude.get_str();
    else if (magnitude != 1)
      out += magnitude.get_str() + "*" + m.to_string();
    else
      out += m.to_string();
  }
  return out;
}

TruncatedSeries generator_series(Letter x, int cap) {
  std::vector<Term> terms;
  const bool y = !is_generator_a(x);
  terms.emplace_back(Monomial{}, mpz_class(1));
  if (is_positive(x)) {
    terms.emplace_back(variable_power(y, 1), mpz_class(1));
  } else {
    for (int j = 1; j <= cap; ++j) terms.emplace_back(variable_power(y, j), mpz_class(j % 2 ? -1 : 1));
  }
  return TruncatedSeries::from_terms(cap, std::move(terms));
}

TruncatedSeries mul(const TruncatedSeries& s1, const TruncatedSeries& s2, int cap) {
  if (s1.cap() != cap || s2.cap() != cap) throw std::invalid_argument("series caps differ");
  std::vector<Term> products;
  for (const auto& [p, c] : s1.terms())
    for (const auto& [q, d] : s2.terms())
      if (static_cast<int>(p.degree + q.degree) <= cap) products.emplace_back(p * q, c * d);
  return TruncatedSeries::from_terms(cap, std::move(products));
}

TruncatedSeries magnus_expand(const Word& w, int cap) {
  check_cap(cap);
  std::vector<Term> terms{{Monomial{}, mpz_class(1)}};
  auto buckets = to_buckets(std::move(terms), cap);
  for (Letter x : w.letters()) multiply_buckets(buckets, x);
  return TruncatedSeries::from_terms(cap, flatten(std::move(buckets)));
}

std::string DepthResult::to_string() const {
  switch (kind) {
    case Kind::Identity: return "Identity";
    case Kind::Exact: return "Exact(" + std::to_string(value) + ")";
    case Kind::AtLeast: return "AtLeast(" + std::to_string(value) + ")";
  }
  return {};
}

DepthResult lcs_depth(const Word& w, int cap, bool allow_large_cap) {
  check_cap(cap);
  if (cap > kSafeMagnusCap && !allow_large_cap)
    throw std::invalid_argument("Magnus cap " + std::to_string(cap) + " above " +
                                std::to_string(kSafeMagnusCap) +
                                " needs an explicit opt-in (memory grows as 2^(cap+1) terms)");
  if (w.empty()) return DepthResult::identity();
  auto degree = magnus_expand(w, cap).lowest_nonconstant_degree();
  return degree ? DepthResult::exact(*degree) : DepthResult::at_least(cap + 1);
}

bool lcs_member(const Word& w, int n) {
  if (n < 1) throw std::invalid_argument("series index must be positive");
  if (n == 1 || w.empty()) return true;
  return !magnus_expand(w, n - 1).lowest_nonconstant_degree().has_value();
}

MembershipProbe::MembershipProbe(int n) : n_(n), cap_(n - 1) {
  if (n < 1) throw std::invalid_argument("series index must be positive");
  if (cap_ >= 1 && cap_ <= kSafeMagnusCap) coeff_.assign((std::size_t{1} << (cap_ + 1)) - 1, 0);
}

bool MembershipProbe::operator()(std::span<const Letter> letters) {
  if (n_ == 1) return true;
  if (coeff_.empty()) return lcs_member(Word::reduce(letters), n_);
  bool overflow = false;
  bool member = run(letters, overflow);
  return overflow ? lcs_member(Word::reduce(letters), n_) : member;
}

bool MembershipProbe::run(std::span<const Letter> letters, bool& overflow) {
  std::fill(coeff_.begin(), coeff_.end(), 0);
  coeff_[0] = 1;
  auto offset = [](int d) { return (std::size_t{1} << d) - 1; };
  for (Letter x : letters) {
    const std::uint64_t y = is_generator_a(x) ? 0 : 1;
    if (is_positive(x)) {
      for (int d = cap_; d >= 1; --d) {
        std::int64_t* dst = &coeff_[offset(d)];
        const std::int64_t* src = &coeff_[offset(d - 1)];
        for (std::size_t m = 0, count = std::size_t{1} << (d - 1); m < count; ++m)
          if (src[m] != 0 && __builtin_add_overflow(dst[(m << 1) | y], src[m], &dst[(m << 1) | y]))
            overflow = true;
      }
    } else {
      for (int d = 1; d <= cap_; ++d) {
        std::int64_t* dst = &coeff_[offset(d)];
        const std::int64_t* src = &coeff_[offset(d - 1)];
        for (std::size_t m = 0, count = std::size_t{1} << (d - 1); m < count; ++m)
          if (src[m] != 0 && __builtin_sub_overflow(dst[(m << 1) | y], src[m], &dst[(m << 1) | y]))
            overflow = true;
      }
    }
    if (overflow) return false;
  }
  for (std::size_t i = 1; i < coeff_.size(); ++i)
    if (coeff_[i] != 0) return false;
  return true;
}

}  // namespace fibgirth
