#include "fibgirth/report.hpp"

#include <algorithm>

namespace fibgirth {
namespace {

std::string excerpt(const Word& w, std::size_t from) {
  constexpr std::size_t kWidth = 24;
  if (w.empty()) return "e";
  std::string s = format(w);
  if (from >= s.size()) return "<end>";
  std::string out = s.substr(from, kWidth);
  if (from > 0) out = "..." + out;
  if (from + kWidth < s.size()) out += "...";
  return out;
}

}  // namespace

void Report::add(std::string name, bool ok, std::string detail) {
  checks_.push_back({std::move(name), ok, std::move(detail)});
}

void Report::expect_equal(std::string name, const Word& lhs, const Word& rhs) {
  if (lhs == rhs)
    add(std::move(name), true, "length " + std::to_string(lhs.length()));
  else
    add(std::move(name), false, word_diff(lhs, rhs));
}

void Report::merge(const Report& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool Report::ok() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.ok; });
}

std::vector<Check> Report::failures() const {
  std::vector<Check> out;
  std::copy_if(checks_.begin(), checks_.end(), std::back_inserter(out), [](const Check& c) { return !c.ok; });
  return out;
}

std::string word_diff(const Word& lhs, const Word& rhs) {
  std::size_t i = 0;
  while (i < lhs.length() && i < rhs.length() && lhs[i] == rhs[i]) ++i;
  return "lengths " + std::to_string(lhs.length()) + " vs " + std::to_string(rhs.length()) +
         ", first difference at position " + std::to_string(i) + ": " + excerpt(lhs, i) + " vs " +
         excerpt(rhs, i);
}

}  // namespace fibgirth
