#include "fibgirth/construction.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fibgirth {
namespace {

const Word kA = Word::generator(Letter::a);
const Word kAInv = Word::generator(Letter::A);
const Word kB = Word::generator(Letter::b);
const Word kBInv = Word::generator(Letter::B);

ConstructionPair base_pair(Variant variant) {
  ConstructionPair p;
  p.variant = variant;
  if (variant == Variant::Standard) {
    p.a = kBInv;
    p.b = parse("abA");
  } else {
    p.a = kA;
    p.b = kB;
  }
  return p;
}

void fill_predictions(ConstructionPair& p) {
  p.predicted_len_a = predicted_length(p.level, Which::A, p.variant);
  p.predicted_len_b = predicted_length(p.level, Which::B, p.variant);
  p.depth_bound = p.variant == Variant::Standard ? depth_lower_bound(p.level)
                                                 : primed_depth_lower_bound(p.level);
}

void check_level(int n, Variant variant, int max_level) {
  if (n < 0) throw std::invalid_argument("level must be non-negative");
  if (n > max_level)
    throw SizeError("level " + std::to_string(n) + " exceeds the configured maximum " +
                    std::to_string(max_level) + " (predicted length of a_n: " +
                    (n <= 58 ? std::to_string(predicted_length(n, Which::A, variant)) : "> 2^58") + ")");
}

bool starts_with(const Word& w, std::string_view prefix) {
  std::string s = format(w);
  return s.compare(0, prefix.size(), prefix) == 0;
}

bool ends_with(const Word& w, std::string_view suffix) {
  std::string s = format(w);
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::Standard ? "standard" : "primed"; }

Variant parse_variant(const std::string& text) {
  if (text == "standard") return Variant::Standard;
  if (text == "primed") return Variant::Primed;
  throw std::invalid_argument("unknown variant '" + text + "'");
}

DepthMode parse_depth_mode(const std::string& text) {
  if (text == "bound") return DepthMode::Bound;
  if (text == "magnus") return DepthMode::Magnus;
  throw std::invalid_argument("unknown depth mode '" + text + "'");
}

std::vector<ConstructionPair> build_levels(int n_max, Variant variant, int max_level) {
  check_level(n_max, variant, max_level);
  std::vector<ConstructionPair> levels;
  levels.reserve(static_cast<std::size_t>(n_max) + 1);
  levels.push_back(base_pair(variant));
  fill_predictions(levels.back());
  for (int n = 1; n <= n_max; ++n) {
    const ConstructionPair& prev = levels.back();
    ConstructionPair next;
    next.level = n;
    next.variant = variant;
    next.a = concat(prev.a, prev.b);
    next.b = concat(invert(prev.a), invert(prev.b));
    fill_predictions(next);
    levels.push_back(std::move(next));
  }
  return levels;
}

ConstructionPair build_pair(int n, Variant variant, int max_level) {
  check_level(n, variant, max_level);
  ConstructionPair p = base_pair(variant);
  for (int i = 1; i <= n; ++i) {
    Word a = concat(p.a, p.b);
    p.b = concat(invert(p.a), invert(p.b));
    p.a = std::move(a);
  }
  p.level = n;
  fill_predictions(p);
  return p;
}

std::uint64_t predicted_length(int n, Which which, Variant variant) {
  if (n < 0 || n > 58) throw std::out_of_range("closed forms are evaluated for 0 <= n <= 58");
  const std::uint64_t pow2 = std::uint64_t{1} << n;
  if (variant == Variant::Primed) return pow2;
  const std::uint64_t base = 13 * pow2;
  switch (n % 3) {
    case 0: return which == Which::A ? (base - 6) / 7 : (base + 8) / 7;
    case 1: return (base + 2) / 7;
    default: return (base + 4) / 7;
  }
}

std::uint64_t fibonacci(int m) {
  if (m < 0) throw std::invalid_argument("fibonacci index must be non-negative");
  if (m > 93) throw std::overflow_error("fibonacci(" + std::to_string(m) + ") exceeds 64 bits");
  std::uint64_t prev = 0, cur = 1;
  if (m == 0) return 0;
  for (int i = 1; i < m; ++i) {
    std::uint64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::uint64_t depth_lower_bound(int n) { return fibonacci(n + 2); }

std::uint64_t primed_depth_lower_bound(int n) { return fibonacci(n + 1); }

Word sigma(const Word& w) { return apply_endomorphism(w, kAInv, kBInv); }
Word tau(const Word& w) { return apply_endomorphism(w, kA, kBInv); }

Report verify_level(int n) {
  Report report;
  auto levels = build_levels(n + 3, Variant::Standard, std::max(kDefaultMaxLevel, n + 3));
  const Word& an = levels[n].a;
  const Word& bn = levels[n].b;
  const std::string at = " at n=" + std::to_string(n);

  switch (n % 3) {
    case 0:
      report.expect_equal("a*sigma(a_n)*a^-1 = b_n" + at, concat_all({kA, sigma(an), kAInv}), bn);
      break;
    case 1:
      report.expect_equal("tau(a_n) = b_n" + at, tau(an), bn);
      break;
    default:
      report.expect_equal("tau(a_n) = b_n^-1" + at, tau(an), invert(bn));
      break;
  }

  if (n > 0) {
    static constexpr std::string_view kHeadA[] = {"B", "B", "B"};
    static constexpr std::string_view kTailA[] = {"B", "bA", "BA"};
    static constexpr std::string_view kHeadB[] = {"ab", "b", "aB"};
    static constexpr std::string_view kTailB[] = {"bA", "BA", "B"};
    const int r = n % 3;
    bool a_ok = starts_with(an, kHeadA[r]) && ends_with(an, kTailA[r]);
    bool b_ok = starts_with(bn, kHeadB[r]) && ends_with(bn, kTailB[r]);
    report.add("reduced form of a_n is " + std::string(kHeadA[r]) + "..." + std::string(kTailA[r]) + at,
               a_ok, a_ok ? "" : "got " + format(an).substr(0, 8) + "..." );
    report.add("reduced form of b_n is " + std::string(kHeadB[r]) + "..." + std::string(kTailB[r]) + at,
               b_ok, b_ok ? "" : "got " + format(bn).substr(0, 8) + "...");
  }

  report.add("l(a_n) matches closed form" + at, an.length() == levels[n].predicted_len_a,
             std::to_string(an.length()) + " vs " + std::to_string(levels[n].predicted_len_a));
  report.add("l(b_n) matches closed form" + at, bn.length() == levels[n].predicted_len_b,
             std::to_string(bn.length()) + " vs " + std::to_string(levels[n].predicted_len_b));

  const std::size_t cancelled = an.length() + bn.length() - levels[n + 1].a.length();
  const std::size_t expected_cancel = n % 3 == 2 ? 2 : 0;
  report.add("cancellation in a_n b_n is " + std::to_string(expected_cancel) + " letters" + at,
             cancelled == expected_cancel, "cancelled " + std::to_string(cancelled));
  report.add("no cancellation in a_n^-1 b_n^-1" + at,
             levels[n + 1].b.length() == an.length() + bn.length());

  report.expect_equal("a_{n+3} = [a_n b_n, a_n^-1 b_n^-1]" + at, levels[n + 3].a,
                      commutator(concat(an, bn), concat(invert(an), invert(bn))));
  report.expect_equal("b_{n+3} = [b_n a_n, b_n^-1 a_n^-1]" + at, levels[n + 3].b,
                      commutator(concat(bn, an), concat(invert(bn), invert(an))));
  report.expect_equal("a_{n+2} = [a_n, b_n]" + at, levels[n + 2].a, commutator(an, bn));
  report.expect_equal("a_{n+2} = [a_{n+1}, b_n]" + at, levels[n + 2].a, commutator(levels[n + 1].a, bn));
  report.expect_equal("a_{n+2} = [a_n b_n, b_n]" + at, levels[n + 2].a, commutator(concat(an, bn), bn));
  return report;
}

std::vector<ExponentRow> exponent_table(int n_max, DepthMode mode, int cap) {
  std::vector<ExponentRow> rows;
  for (const auto& p : build_levels(n_max)) {
    ExponentRow row;
    row.n = p.level;
    row.len_a = p.a.length();
    row.len_b = p.b.length();
    row.depth_bound = p.depth_bound;
    row.depth_hat = p.depth_bound;
    if (mode == DepthMode::Magnus) {
      DepthResult d = lcs_depth(p.a, cap);
      row.depth_exact = d;
      if (d.kind == DepthResult::Kind::Exact) {
        row.depth_hat = static_cast<std::uint64_t>(d.value);
      } else {
        row.depth_hat = std::max<std::uint64_t>(p.depth_bound, static_cast<std::uint64_t>(d.value));
        row.flagged = true;
      }
    } else {
      row.flagged = true;
    }
    if (row.len_a >= 2)
      row.estimate = std::log(static_cast<double>(row.depth_hat)) / std::log(static_cast<double>(row.len_a));
    rows.push_back(row);
  }
  return rows;
}

Report verify_commutator_shifts(int samples, std::uint64_t seed) {
  Report report;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, 12), letter(0, 3);
  auto random_word = [&] {
    std::vector<Letter> raw;
    for (int i = len(rng); i > 0; --i) raw.push_back(static_cast<Letter>(letter(rng)));
    return Word::reduce(raw);
  };
  for (int s = 0; s < samples; ++s) {
    const Word w1 = random_word(), w2 = random_word();
    const Word c = commutator(w1, w2);
    for (int n = -3; n <= 3; ++n) {
      const std::string at = " (" + format(w1) + ", " + format(w2) + ", n=" + std::to_string(n) + ")";
      report.expect_equal("[w1,w2] = [w1 w2^n, w2]" + at, commutator(concat(w1, power(w2, n)), w2), c);
      report.expect_equal("[w1,w2] = [w1, w2 w1^n]" + at, commutator(w1, concat(w2, power(w1, n))), c);
    }
  }
  return report;
}

ExponentRow exponent_row_for(const Word& w, int cap) {
  ExponentRow row;
  row.len_a = w.length();
  row.len_b = w.length();
  DepthResult d = lcs_depth(w, cap);
  row.depth_exact = d;
  row.depth_hat = d.kind == DepthResult::Kind::Identity ? 0 : static_cast<std::uint64_t>(d.value);
  row.flagged = d.kind != DepthResult::Kind::Exact;
  row.label = "word:" + format(w);
  if (row.len_a >= 2 && row.depth_hat > 0)
    row.estimate = std::log(static_cast<double>(row.depth_hat)) / std::log(static_cast<double>(row.len_a));
  return row;
}

}  // namespace fibgirth
