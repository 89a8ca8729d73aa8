#pragma once

#include <string>
#include <vector>

#include "fibgirth/word.hpp"

namespace fibgirth {

/// Outcome of a named identity or fact check.
struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

class Report {
 public:
  void add(std::string name, bool ok, std::string detail = {});
  /// Records an equality of reduced words; on mismatch the detail names the
  /// first differing position.
  void expect_equal(std::string name, const Word& lhs, const Word& rhs);
  void merge(const Report& other);

  const std::vector<Check>& checks() const { return checks_; }
  bool ok() const;
  std::vector<Check> failures() const;

 private:
  std::vector<Check> checks_;
};

/// Human-readable description of where two words differ.
std::string word_diff(const Word& lhs, const Word& rhs);

}  // namespace fibgirth
