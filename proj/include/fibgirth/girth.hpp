#pragma once

#include <cstdint>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fibgirth/report.hpp"
#include "fibgirth/word.hpp"

namespace fibgirth {

/// Symmetries a membership predicate is invariant under. Canonical
/// enumeration only quotients by the declared ones.
struct Symmetries {
  bool conjugation = true;  // cyclic rotation of cyclically reduced words
  bool inversion = true;    // w -> w^-1
  bool flip_a = true;       // a -> a^-1
  bool flip_b = true;       // b -> b^-1
  bool swap = true;         // a <-> b

  static Symmetries all() { return {}; }
  static Symmetries none() { return {false, false, false, false, false}; }
};

/// A letter permutation induced by the declared generator symmetries.
using LetterMap = std::array<Letter, 4>;

/// The group of letter maps generated by the declared flags (identity first).
std::vector<LetterMap> letter_map_group(const Symmetries& sym);

/// Whether `letters` is the lexicographic minimum of its orbit.
bool is_canonical(std::span<const Letter> letters, const Symmetries& sym);

/// One representative per orbit among words of the given length: cyclically
/// reduced words when conjugation is declared, all reduced words otherwise.
std::vector<Word> enumerate_canonical(int length, const Symmetries& sym = Symmetries::all());

struct GirthRecord {
  std::string kind = "girth";
  int n = 0;                                // series index for alpha records
  std::optional<std::size_t> value;         // absent: unknown above `radius`
  std::optional<Word> witness;
  std::size_t radius = 0;                   // largest length enumerated
  std::optional<std::size_t> upper_bound;   // known bound supplied to the search
  std::uint64_t candidates = 0;             // predicate evaluations
  double seconds = 0;

  /// Equality ignoring wall time.
  bool same_result(const GirthRecord& other) const;
};

using WordPredicate = std::function<bool(std::span<const Letter>)>;
/// Produces one predicate per worker thread; predicates may hold scratch state.
using PredicateFactory = std::function<WordPredicate()>;

struct GirthOptions {
  Symmetries symmetries = Symmetries::all();
  /// Caller asserts every member has zero exponent sums; enables pruning.
  bool zero_exponent_sums = false;
  /// Lengths above this are never enumerated.
  std::optional<std::size_t> upper_bound;
  unsigned threads = 1;
};

GirthRecord girth_of(const PredicateFactory& membership, std::size_t max_radius, const GirthOptions& options);
GirthRecord girth_of(const WordPredicate& membership, std::size_t max_radius, const GirthOptions& options);

/// Length of a_m for the least m with f_{m+2} >= n.
std::size_t alpha_upper_bound(int n);

/// Shortest nontrivial element of gamma_n, by canonical enumeration.
GirthRecord alpha(int n, std::size_t max_radius, unsigned threads = 1);

/// Reference search over every reduced word with no symmetry reduction.
GirthRecord alpha_naive(int n, std::size_t max_radius);

/// [[b^-1,a][a,b], [a,b^-1][b,a]], the length-28 element of gamma_7.
Word girth_word_28();

/// Known decompositions, the a_4 and w28 fixtures and the girth([gamma_3,
/// gamma_2]) <= 14 bound; alpha(2), alpha(3) are
/// recomputed with the given radius.
Report verify_girth_facts(std::size_t radius = 10, unsigned threads = 1);

}  // namespace fibgirth
