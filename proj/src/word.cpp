#include "fibgirth/word.hpp"

#include <algorithm>
#include <cstdlib>

namespace fibgirth {

char to_char(Letter x) {
  static constexpr char kChars[] = {'a', 'A', 'b', 'B'};
  return kChars[index(x)];
}

Word Word::reduce(std::span<const Letter> letters) {
  Word w;
  w.letters_.reserve(letters.size());
  for (Letter x : letters) w.push(x);
  return w;
}

void Word::push(Letter x) {
  if (!letters_.empty() && is_inverse_pair(letters_.back(), x))
    letters_.pop_back();
  else
    letters_.push_back(x);
}

std::strong_ordering operator<=>(const Word& x, const Word& y) {
  return std::lexicographical_compare_three_way(x.letters_.begin(), x.letters_.end(),
                                                y.letters_.begin(), y.letters_.end());
}

Word parse(std::string_view text) {
  if (text == "e") return Word{};
  if (text.empty()) throw ParseError("empty word (use \"e\" for the identity)", 0);
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'a': letters.push_back(Letter::a); break;
      case 'A': letters.push_back(Letter::A); break;
      case 'b': letters.push_back(Letter::b); break;
      case 'B': letters.push_back(Letter::B); break;
      default:
        throw ParseError("unexpected character '" + std::string(1, text[i]) + "' at position " +
                             std::to_string(i),
                         i);
    }
  }
  return Word::reduce(letters);
}

std::string format(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  s.reserve(w.length());
  for (Letter x : w.letters()) s.push_back(to_char(x));
  return s;
}

Word concat(const Word& w1, const Word& w2) {
  auto l1 = w1.letters();
  auto l2 = w2.letters();
  // Length of the cancelling junction.
  std::size_t k = 0;
  while (k < l1.size() && k < l2.size() && is_inverse_pair(l1[l1.size() - 1 - k], l2[k])) ++k;
  std::vector<Letter> out;
  out.reserve(l1.size() + l2.size() - 2 * k);
  out.insert(out.end(), l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
  // Both remainders are reduced and the junction no longer cancels.
  Word w;
  for (Letter x : out) w.push(x);
  return w;
}

Word concat_all(std::initializer_list<Word> words) {
  Word result;
  for (const Word& w : words) result = concat(result, w);
  return result;
}

Word invert(const Word& w) {
  std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
  for (Letter& x : out) x = inverse(x);
  return Word::reduce(out);
}

Word commutator(const Word& w1, const Word& w2) {
  return concat(concat(w1, w2), concat(invert(w1), invert(w2)));
}

Word power(const Word& w, long long n) {
  Word base = n < 0 ? invert(w) : w;
  unsigned long long m = n < 0 ? 0ull - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  Word result;
  if (m <= 8) {
    for (unsigned long long i = 0; i < m; ++i) result = concat(result, base);
    return result;
  }
  while (m > 0) {
    if (m & 1ull) result = concat(result, base);
    m >>= 1;
    if (m > 0) base = concat(base, base);
  }
  return result;
}

Word apply_endomorphism(const Word& w, const Word& image_a, const Word& image_b) {
  const Word images[4] = {image_a, invert(image_a), image_b, invert(image_b)};
  Word result;
  for (Letter x : w.letters()) result = concat(result, images[index(x)]);
  return result;
}

bool is_cyclically_reduced(std::span<const Letter> letters) {
  return letters.size() < 2 || !is_inverse_pair(letters.front(), letters.back());
}

CyclicReduction cyclic_reduce(const Word& w) {
  auto l = w.letters();
  std::size_t k = 0;
  while (2 * k + 1 < l.size() && is_inverse_pair(l[k], l[l.size() - 1 - k])) ++k;
  return {Word::reduce(l.subspan(k, l.size() - 2 * k)), Word::reduce(l.first(k))};
}

std::pair<long long, long long> exponent_sums(const Word& w) {
  long long sa = 0, sb = 0;
  for (Letter x : w.letters()) {
    long long s = is_positive(x) ? 1 : -1;
    (is_generator_a(x) ? sa : sb) += s;
  }
  return {sa, sb};
}

}  // namespace fibgirth
