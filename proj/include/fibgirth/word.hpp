#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fibgirth {

/// A generator of F2 or its inverse. The numeric order a < A < b < B is the
/// letter order used for every lexicographic comparison in the library.
enum class Letter : std::uint8_t { a = 0, A = 1, b = 2, B = 3 };

constexpr Letter inverse(Letter x) { return static_cast<Letter>(static_cast<std::uint8_t>(x) ^ 1u); }
constexpr bool is_inverse_pair(Letter x, Letter y) { return (static_cast<std::uint8_t>(x) ^ static_cast<std::uint8_t>(y)) == 1u; }
constexpr bool is_generator_a(Letter x) { return static_cast<std::uint8_t>(x) < 2; }
constexpr bool is_positive(Letter x) { return (static_cast<std::uint8_t>(x) & 1u) == 0; }
constexpr int index(Letter x) { return static_cast<int>(x); }

char to_char(Letter x);

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Freely reduced word over {a, A, b, B}. The empty word is the identity.
class Word {
 public:
  Word() = default;

  /// Freely reduces an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> letters);
  static Word generator(Letter x) { Word w; w.letters_.push_back(x); return w; }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  /// Appends a letter, cancelling against the last one when they are inverse.
  void push(Letter x);

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& x, const Word& y);

 private:
  std::vector<Letter> letters_;
};

Word parse(std::string_view text);
std::string format(const Word& w);

Word concat(const Word& w1, const Word& w2);
Word invert(const Word& w);
Word commutator(const Word& w1, const Word& w2);
Word power(const Word& w, long long n);

/// Substitutes a -> image_a, b -> image_b (inverse letters by the inverse
/// images) and reduces.
Word apply_endomorphism(const Word& w, const Word& image_a, const Word& image_b);

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclic_reduce(const Word& w);

bool is_cyclically_reduced(std::span<const Letter> letters);

/// Exponent sums of a and b.
std::pair<long long, long long> exponent_sums(const Word& w);

// Frequently used constants.
inline Word letter_word(Letter x) { return Word::generator(x); }
Word concat_all(std::initializer_list<Word> words);

}  // namespace fibgirth
