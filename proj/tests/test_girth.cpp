#include <set>

#include <gtest/gtest.h>

#include "fibgirth/construction.hpp"
#include "fibgirth/girth.hpp"

using namespace fibgirth;

namespace {

const Letter kAll[] = {Letter::a, Letter::A, Letter::b, Letter::B};

// All cyclically reduced words of a given length, by brute force.
std::vector<Word> cyclically_reduced(int length) {
  std::vector<Word> out;
  std::vector<Letter> buf(length);
  std::size_t total = std::size_t{1} << (2 * length);
  for (std::size_t code = 0; code < total; ++code) {
    for (int i = 0; i < length; ++i) buf[i] = kAll[(code >> (2 * i)) & 3];
    const Word w = Word::reduce(buf);
    if (static_cast<int>(w.length()) == length && is_cyclically_reduced(w.letters())) out.push_back(w);
  }
  return out;
}

// Orbit under rotation, inversion and the eight letter maps, written out by hand.
std::set<Word> orbit(const Word& w) {
  std::set<Word> out;
  for (int fa = 0; fa < 2; ++fa)
    for (int fb = 0; fb < 2; ++fb)
      for (int sw = 0; sw < 2; ++sw) {
        Word ia = parse(fa ? "A" : "a"), ib = parse(fb ? "B" : "b");
        if (sw) std::swap(ia, ib);
        const Word image = apply_endomorphism(w, ia, ib);
        for (const Word& base : {image, invert(image)}) {
          std::vector<Letter> l(base.letters().begin(), base.letters().end());
          for (std::size_t r = 0; r < l.size(); ++r) {
            out.insert(Word::reduce(l));
            std::rotate(l.begin(), l.begin() + 1, l.end());
          }
        }
      }
  return out;
}

std::set<Word> oracle_representatives(int length) {
  std::set<Word> reps;
  for (const Word& w : cyclically_reduced(length)) reps.insert(*orbit(w).begin());
  return reps;
}

}  // namespace

TEST(Canonical, SmallLengths) {
  const auto l1 = enumerate_canonical(1);
  ASSERT_EQ(l1.size(), 1u);
  EXPECT_EQ(l1[0], parse("a"));
  const auto l2 = enumerate_canonical(2);
  EXPECT_EQ(std::set<Word>(l2.begin(), l2.end()), (std::set<Word>{parse("aa"), parse("ab")}));
}

TEST(Canonical, MatchesOrbitOracle) {
  for (int length = 1; length <= 6; ++length) {
    const auto got = enumerate_canonical(length);
    const std::set<Word> got_set(got.begin(), got.end());
    EXPECT_EQ(got_set.size(), got.size()) << "duplicates at length " << length;
    EXPECT_EQ(got_set, oracle_representatives(length)) << "length " << length;
    for (const Word& w : got) {
      EXPECT_TRUE(is_cyclically_reduced(w.letters()));
      EXPECT_EQ(*orbit(w).begin(), w);
    }
  }
}

TEST(Canonical, PartialSymmetries) {
  Symmetries sym = Symmetries::none();
  sym.conjugation = true;
  const auto got = enumerate_canonical(3, sym);
  // rotation classes only
  std::set<std::set<Word>> classes;
  for (const Word& w : cyclically_reduced(3)) {
    std::set<Word> rot;
    std::vector<Letter> l(w.letters().begin(), w.letters().end());
    for (int r = 0; r < 3; ++r) {
      rot.insert(Word::reduce(l));
      std::rotate(l.begin(), l.begin() + 1, l.end());
    }
    classes.insert(rot);
  }
  EXPECT_EQ(got.size(), classes.size());
  EXPECT_EQ(letter_map_group(Symmetries::all()).size(), 8u);
  EXPECT_EQ(letter_map_group(Symmetries::none()).size(), 1u);
}

TEST(GirthOf, Examples) {
  GirthOptions opts;
  EXPECT_EQ(girth_of([](std::span<const Letter> l) { return lcs_member(Word::reduce(l), 2); }, 8, opts).value,
            std::size_t{4});

  GirthOptions no_swap;
  no_swap.symmetries.swap = false;
  const auto sum_a = girth_of(
      [](std::span<const Letter> l) { return exponent_sums(Word::reduce(l)).first == 0; }, 4, no_swap);
  EXPECT_EQ(sum_a.value, std::size_t{1});
  EXPECT_EQ(sum_a.witness, parse("b"));

  const auto never = girth_of([](std::span<const Letter>) { return false; }, 5, opts);
  EXPECT_FALSE(never.value);
  EXPECT_FALSE(never.witness);
  EXPECT_EQ(never.radius, 5u);
}

TEST(Alpha, SmallValues) {
  const auto a1 = alpha(1, 8);
  EXPECT_EQ(a1.value, std::size_t{1});
  EXPECT_EQ(a1.witness, parse("a"));
  const auto a2 = alpha(2, 8);
  EXPECT_EQ(a2.value, std::size_t{4});
  EXPECT_TRUE(orbit(parse("abAB")).contains(*a2.witness));
  const auto a3 = alpha(3, 10);
  EXPECT_EQ(a3.value, std::size_t{8});
  for (const auto* r : {&a1, &a2, &a3}) {
    EXPECT_EQ(r->witness->length(), *r->value);
    EXPECT_TRUE(lcs_member(*r->witness, r->n));
  }
  EXPECT_EQ(a3.kind, "alpha");
}

TEST(Alpha, RadiusTooSmall) {
  const auto r = alpha(3, 6);
  EXPECT_FALSE(r.value);
  EXPECT_EQ(r.radius, 6u);
  EXPECT_EQ(r.upper_bound, std::size_t{8});
}

TEST(Alpha, NaiveEnumeratorAgrees) {
  for (int n = 1; n <= 3; ++n) {
    const auto fast = alpha(n, 8), slow = alpha_naive(n, 8);
    EXPECT_EQ(fast.value, slow.value) << n;
    ASSERT_TRUE(slow.witness);
    EXPECT_TRUE(lcs_member(*slow.witness, n));
  }
}

TEST(Alpha, UpperBoundAndMonotone) {
  EXPECT_EQ(alpha_upper_bound(1), 1u);
  EXPECT_EQ(alpha_upper_bound(2), 4u);
  EXPECT_EQ(alpha_upper_bound(3), 8u);
  EXPECT_EQ(alpha_upper_bound(4), 14u);
  EXPECT_EQ(alpha_upper_bound(5), 14u);
  std::size_t previous = 0;
  for (int n = 1; n <= 5; ++n) {
    const auto r = alpha(n, 16);
    ASSERT_TRUE(r.value) << n;
    EXPECT_GE(*r.value, previous);
    EXPECT_LE(*r.value, alpha_upper_bound(n));
    previous = *r.value;
  }
  // alpha(f_{m+2}) <= l(a_m)
  for (int m = 0; m <= 3; ++m) {
    const auto r = alpha(static_cast<int>(depth_lower_bound(m)), 16);
    ASSERT_TRUE(r.value);
    EXPECT_LE(*r.value, build_pair(m).a.length()) << m;
  }
}

TEST(Alpha, DeterministicAcrossThreads) {
  const auto one = alpha(4, 16, 1);
  const auto again = alpha(4, 16, 1);
  const auto three = alpha(4, 16, 3);
  EXPECT_TRUE(one.same_result(again));
  EXPECT_TRUE(one.same_result(three));
  ASSERT_TRUE(one.witness);
  EXPECT_TRUE(lcs_member(*one.witness, 4));
}

TEST(GirthFacts, Word28AndChecks) {
  const Word w = girth_word_28();
  EXPECT_EQ(w.length(), 28u);
  EXPECT_TRUE(lcs_member(w, 7));
  EXPECT_EQ(lcs_depth(w, 10), DepthResult::exact(7));
  const Report r = verify_girth_facts();
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.failures().front().name);
}
