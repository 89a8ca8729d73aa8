#include "fibgirth/girth.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <cstdlib>
#include <set>
#include <thread>

#include "fibgirth/construction.hpp"
#include "fibgirth/magnus.hpp"

namespace fibgirth {
namespace {

constexpr LetterMap kIdentityMap{Letter::a, Letter::A, Letter::b, Letter::B};

LetterMap compose(const LetterMap& f, const LetterMap& g) {
  LetterMap h{};
  for (int i = 0; i < 4; ++i) h[i] = f[index(g[i])];
  return h;
}

// Depth-first enumeration of words of a fixed length in lexicographic order,
// pruning prefixes that a declared letter map sends to something smaller.
class Enumerator {
 public:
  Enumerator(std::size_t length, const Symmetries& sym, bool zero_sums)
      : length_(length), sym_(sym), zero_sums_(zero_sums), maps_(letter_map_group(sym)) {
    buf_.reserve(length);
    status_.push_back(std::vector<bool>(maps_.size(), true));
  }

  bool push(Letter x) {
    if (!buf_.empty() && is_inverse_pair(buf_.back(), x)) return false;
    long long sa = sa_, sb = sb_;
    (is_generator_a(x) ? sa : sb) += is_positive(x) ? 1 : -1;
    if (zero_sums_) {
      long long remaining = static_cast<long long>(length_ - buf_.size() - 1);
      if (std::llabs(sa) + std::llabs(sb) > remaining) return false;
    }
    std::vector<bool> next = status_.back();
    for (std::size_t g = 1; g < maps_.size(); ++g) {
      if (!next[g]) continue;
      Letter image = maps_[g][index(x)];
      if (image < x) return false;
      if (image > x) next[g] = false;
    }
    buf_.push_back(x);
    status_.push_back(std::move(next));
    sa_ = sa;
    sb_ = sb;
    return true;
  }

  void pop() {
    Letter x = buf_.back();
    (is_generator_a(x) ? sa_ : sb_) -= is_positive(x) ? 1 : -1;
    buf_.pop_back();
    status_.pop_back();
  }

  // Calls visit(letters) for every canonical completion of the current prefix.
  template <typename Visit>
  void run(Visit& visit) {
    if (buf_.size() == length_) {
      if (sym_.conjugation && !is_cyclically_reduced(buf_)) return;
      if (zero_sums_ && (sa_ != 0 || sb_ != 0)) return;
      if (!is_canonical(buf_, sym_)) return;
      visit(std::span<const Letter>(buf_));
      return;
    }
    for (Letter x : {Letter::a, Letter::A, Letter::b, Letter::B}) {
      if (!push(x)) continue;
      run(visit);
      pop();
    }
  }

  // All admissible prefixes of the given size, in lexicographic order.
  void prefixes(std::size_t size, std::vector<std::vector<Letter>>& out) {
    if (buf_.size() == size) {
      out.push_back(buf_);
      return;
    }
    for (Letter x : {Letter::a, Letter::A, Letter::b, Letter::B}) {
      if (!push(x)) continue;
      prefixes(size, out);
      pop();
    }
  }

 private:
  std::size_t length_;
  Symmetries sym_;
  bool zero_sums_;
  std::vector<LetterMap> maps_;
  std::vector<Letter> buf_;
  std::vector<std::vector<bool>> status_;  // per map: image equal to prefix so far
  long long sa_ = 0, sb_ = 0;
};

struct TaskResult {
  std::uint64_t count = 0;
  std::optional<Word> first_member;
};

// Searches one length. Tasks are 3-letter prefixes; the merge takes the first
// task in lexicographic order that found a member, so results do not depend
// on the schedule.
TaskResult search_length(std::size_t length, const PredicateFactory& factory, const GirthOptions& options) {
  std::vector<std::vector<Letter>> tasks;
  Enumerator(length, options.symmetries, options.zero_exponent_sums)
      .prefixes(std::min<std::size_t>(3, length), tasks);

  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    WordPredicate member = factory();
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      Enumerator e(length, options.symmetries, options.zero_exponent_sums);
      for (Letter x : tasks[t]) e.push(x);
      TaskResult& r = results[t];
      auto visit = [&](std::span<const Letter> letters) {
        ++r.count;
        if (member(letters) && !r.first_member) r.first_member = Word::reduce(letters);
      };
      e.run(visit);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  TaskResult merged;
  for (auto& r : results) {
    merged.count += r.count;
    if (!merged.first_member && r.first_member) merged.first_member = std::move(r.first_member);
  }
  return merged;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<LetterMap> letter_map_group(const Symmetries& sym) {
  std::vector<LetterMap> generators;
  if (sym.flip_a) generators.push_back({Letter::A, Letter::a, Letter::b, Letter::B});
  if (sym.flip_b) generators.push_back({Letter::a, Letter::A, Letter::B, Letter::b});
  if (sym.swap) generators.push_back({Letter::b, Letter::B, Letter::a, Letter::A});
  std::vector<LetterMap> group{kIdentityMap};
  for (std::size_t i = 0; i < group.size(); ++i)
    for (const auto& g : generators) {
      LetterMap h = compose(g, group[i]);
      if (std::find(group.begin(), group.end(), h) == group.end()) group.push_back(h);
    }
  return group;
}

bool is_canonical(std::span<const Letter> w, const Symmetries& sym) {
  const std::size_t len = w.size();
  if (len == 0) return true;
  const auto maps = letter_map_group(sym);
  const std::size_t rotations = sym.conjugation ? len : 1;
  for (const auto& g : maps) {
    for (int orientation = 0; orientation < (sym.inversion ? 2 : 1); ++orientation) {
      for (std::size_t r = 0; r < rotations; ++r) {
        for (std::size_t i = 0; i < len; ++i) {
          Letter x = orientation == 0 ? w[(r + i) % len] : inverse(w[len - 1 - (r + i) % len]);
          Letter t = g[index(x)];
          if (t < w[i]) return false;
          if (t > w[i]) break;
        }
      }
    }
  }
  return true;
}

std::vector<Word> enumerate_canonical(int length, const Symmetries& sym) {
  std::vector<Word> out;
  if (length < 1) return out;
  Enumerator e(static_cast<std::size_t>(length), sym, false);
  auto visit = [&](std::span<const Letter> letters) { out.push_back(Word::reduce(letters)); };
  e.run(visit);
  return out;
}

bool GirthRecord::same_result(const GirthRecord& o) const {
  return kind == o.kind && n == o.n && value == o.value && witness == o.witness && radius == o.radius &&
         upper_bound == o.upper_bound && candidates == o.candidates;
}

GirthRecord girth_of(const PredicateFactory& membership, std::size_t max_radius, const GirthOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  GirthRecord record;
  record.upper_bound = options.upper_bound;
  const std::size_t limit = options.upper_bound ? std::min(max_radius, *options.upper_bound) : max_radius;
  for (std::size_t length = 1; length <= limit; ++length) {
    record.radius = length;
    if (options.zero_exponent_sums && length % 2 == 1) continue;
    TaskResult r = search_length(length, membership, options);
    record.candidates += r.count;
    if (r.first_member) {
      record.value = length;
      record.witness = std::move(r.first_member);
      break;
    }
  }
  record.seconds = elapsed_since(start);
  return record;
}

GirthRecord girth_of(const WordPredicate& membership, std::size_t max_radius, const GirthOptions& options) {
  return girth_of(PredicateFactory([&membership] { return membership; }), max_radius, options);
}

std::size_t alpha_upper_bound(int n) {
  if (n < 1) throw std::invalid_argument("series index must be positive");
  int m = 0;
  while (fibonacci(m + 2) < static_cast<std::uint64_t>(n)) ++m;
  return predicted_length(m, Which::A);
}

GirthRecord alpha(int n, std::size_t max_radius, unsigned threads) {
  GirthOptions options;
  options.zero_exponent_sums = n >= 2;
  options.upper_bound = alpha_upper_bound(n);
  options.threads = threads;
  PredicateFactory factory = [n] {
    return WordPredicate([probe = std::make_shared<MembershipProbe>(n)](std::span<const Letter> w) {
      return (*probe)(w);
    });
  };
  GirthRecord record = girth_of(factory, max_radius, options);
  record.kind = "alpha";
  record.n = n;
  return record;
}

GirthRecord alpha_naive(int n, std::size_t max_radius) {
  const auto start = std::chrono::steady_clock::now();
  GirthRecord record;
  record.kind = "alpha";
  record.n = n;
  std::vector<Letter> buf;
  std::optional<Word> found;
  // Odometer over all reduced words of a given length, in lexicographic order.
  auto scan = [&](auto&& self, std::size_t length) -> void {
    if (buf.size() == length) {
      ++record.candidates;
      Word w = Word::reduce(buf);
      if (!found && lcs_member(w, n)) found = w;
      return;
    }
    for (Letter x : {Letter::a, Letter::A, Letter::b, Letter::B}) {
      if (!buf.empty() && is_inverse_pair(buf.back(), x)) continue;
      buf.push_back(x);
      self(self, length);
      buf.pop_back();
    }
  };
  for (std::size_t length = 1; length <= max_radius; ++length) {
    record.radius = length;
    scan(scan, length);
    if (found) {
      record.value = length;
      record.witness = found;
      break;
    }
  }
  record.seconds = elapsed_since(start);
  return record;
}

Word girth_word_28() {
  const Word a = parse("a"), b = parse("b"), A = parse("A"), B = parse("B");
  return commutator(concat(commutator(B, a), commutator(a, b)), concat(commutator(a, B), commutator(b, a)));
}

Report verify_girth_facts(std::size_t radius, unsigned threads) {
  Report report;
  const Word a = parse("a"), b = parse("b"), B = parse("B");
  const auto levels = build_levels(4);

  // Decompositions of the first levels.
  report.expect_equal("decomposition: a_1 = [b^-1,a]", levels[1].a, commutator(B, a));
  report.expect_equal("decomposition: a_2 = [b^-1,a][b,a]", levels[2].a, concat(commutator(B, a), commutator(b, a)));
  report.expect_equal("decomposition: a_2 = [[b^-1,a],b]", levels[2].a, commutator(commutator(B, a), b));
  report.expect_equal("decomposition: a_3 = [[b^-1,a],[b,a]]", levels[3].a,
                      commutator(commutator(B, a), commutator(b, a)));
  report.expect_equal("decomposition: a_3 = [[b^-1,a][b,a],[b,a]]", levels[3].a,
                      commutator(concat(commutator(B, a), commutator(b, a)), commutator(b, a)));

  // [b^-1,a][a,b] and [a,b]^2 lie in gamma_2 but not gamma_3.
  const Word six = concat(commutator(B, a), commutator(a, b));
  report.add("short words: l([b^-1,a][a,b]) = 6", six.length() == 6, std::to_string(six.length()));
  report.add("short words: [b^-1,a][a,b] in gamma_2 \\ gamma_3", lcs_member(six, 2) && !lcs_member(six, 3));
  const Word square = power(commutator(a, b), 2);
  report.add("short words: [a,b]^2 in gamma_2 \\ gamma_3", lcs_member(square, 2) && !lcs_member(square, 3));

  // a_4 and the shorter 28-letter word.
  const Word a4 = levels[4].a;
  report.expect_equal("fixture: a_4 = [[b^-1,a][b,a],[a,b^-1][a,b]]", a4,
                      commutator(concat(commutator(B, a), commutator(b, a)),
                                 concat(commutator(a, B), commutator(a, b))));
  report.add("fixture: l(a_4) = 30", a4.length() == 30, std::to_string(a4.length()));
  report.add("fixture: a_4 in gamma_8", lcs_member(a4, 8));
  const Word w28 = girth_word_28();
  report.add("fixture: l(w28) = 28", w28.length() == 28, std::to_string(w28.length()));
  report.add("fixture: w28 in gamma_7", lcs_member(w28, 7));
  const Word right = concat(commutator(a, B), commutator(b, a));
  report.add("fixture: [a,b^-1][b,a] in gamma_2 \\ gamma_3", lcs_member(right, 2) && !lcs_member(right, 3));
  report.expect_equal("fixture: [a,b^-1][b,a] = [a,b]([b,a][a,b^-1])[b,a]", right,
                      concat_all({commutator(a, b), commutator(b, a), commutator(a, B), commutator(b, a)}));

  // girth([gamma_3, gamma_2]) <= 14 through a_3 = [a_2, b_1].
  const Word a3 = levels[3].a;
  report.expect_equal("girth bound: a_3 = [a_2, b_1]", a3, commutator(levels[2].a, levels[1].b));
  report.add("girth bound: a_2 in gamma_3", lcs_member(levels[2].a, 3));
  report.add("girth bound: b_1 in gamma_2", lcs_member(levels[1].b, 2));
  report.add("girth bound: l(a_3) = 14", a3.length() == 14, std::to_string(a3.length()));

  const GirthRecord alpha2 = alpha(2, radius, threads);
  const GirthRecord alpha3 = alpha(3, radius, threads);
  const bool have = alpha2.value && alpha3.value;
  report.add("short words: alpha(2) = 4", alpha2.value == std::size_t{4},
             alpha2.witness ? "witness " + format(*alpha2.witness) : "no witness");
  report.add("short words: alpha(3) = 8", alpha3.value == std::size_t{8},
             alpha3.witness ? "witness " + format(*alpha3.witness) : "no witness");
  report.add("girth bound: 14 < 2 * alpha(3)", have && 14 < 2 * *alpha3.value,
             have ? "14 < " + std::to_string(2 * *alpha3.value) : "alpha(3) unknown");
  report.add("girth bound: 14 > 3 * alpha(2)", have && 14 > 3 * *alpha2.value,
             have ? "14 > " + std::to_string(3 * *alpha2.value) : "alpha(2) unknown");
  return report;
}

}  // namespace fibgirth
