#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fibgirth/word.hpp"

namespace fibgirth {

using Element = std::uint32_t;

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
class FiniteGroup {
 public:
  /// Validates the table: square, in range, element 0 is a two-sided
  /// identity, every element has a two-sided inverse, and associativity
  /// (exhaustive up to order 64, sampled above). Throws GroupError naming the
  /// failed axiom and indices.
  static FiniteGroup from_table(std::string name, std::vector<std::vector<Element>> table);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  Element mul(Element x, Element y) const { return table_[x * order_ + y]; }
  Element inverse(Element x) const { return inverse_[x]; }
  static constexpr Element identity() { return 0; }
  std::vector<std::vector<Element>> table() const;

  Element commutator(Element x, Element y) const { return mul(mul(x, y), mul(inverse(x), inverse(y))); }

 private:
  std::string name_;
  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
};

/// Evaluates w(g, h) with a -> g, b -> h.
Element evaluate_word(const FiniteGroup& group, const Word& w, Element g, Element h);
/// Same for an arbitrary, possibly unreduced, letter sequence.
Element evaluate_letters(const FiniteGroup& group, std::span<const Letter> letters, Element g, Element h);

struct LawCertificate {
  Word word;
  std::string group;
  std::uint64_t pairs_checked = 0;
  bool holds = false;
  std::optional<std::pair<Element, Element>> counterexample;  // first failure in g-major order
};

LawCertificate is_law(const FiniteGroup& group, const Word& w, unsigned threads = 1);

struct NilpotencyInfo {
  bool nilpotent = false;
  int nilpotency_class = 0;                 // meaningful when nilpotent
  std::vector<std::size_t> series_orders;  // |gamma_1|, |gamma_2|, ... until it stabilises
};

NilpotencyInfo nilpotency_class(const FiniteGroup& group);

/// Level m of the standard construction used as a law for nilpotent groups of
/// order <= n: least m with f_{m+2} >= max(2, floor(log2 n)).
int nilpotent_law_level(std::uint64_t n);
Word nilpotent_law_word(std::uint64_t n);
/// l(word) / (log2 n)^{log_phi 2}.
double nilpotent_law_constant(std::uint64_t n);

nlohmann::json to_json(const FiniteGroup& group);
FiniteGroup group_from_json(const nlohmann::json& j);
FiniteGroup load_group(const std::filesystem::path& path);
void save_group(const FiniteGroup& group, const std::filesystem::path& path);
/// Every *.json group in a directory, sorted by (order, name).
std::vector<FiniteGroup> load_catalog(const std::filesystem::path& dir);

/// Directory of the bundled catalog; FIBGIRTH_CATALOG overrides the
/// compiled-in default.
std::filesystem::path default_catalog_dir();

}  // namespace fibgirth
