#include "fibgirth/finite_group.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

#include "fibgirth/construction.hpp"

#ifndef FIBGIRTH_CATALOG_DIR
#define FIBGIRTH_CATALOG_DIR "data/groups"
#endif

namespace fibgirth {
namespace {

constexpr std::size_t kExhaustiveAssociativity = 64;
constexpr int kSampledTriples = 200000;

std::string triple(std::size_t x, std::size_t y, std::size_t z) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ", " + std::to_string(z) + ")";
}

// Subgroup generated by a set of elements (closure under products suffices
// in a finite group).
std::vector<bool> generated_subgroup(const FiniteGroup& g, const std::vector<Element>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> members{FiniteGroup::identity()};
  in[FiniteGroup::identity()] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Element s : gens) {
      Element p = g.mul(members[i], s);
      if (!in[p]) {
        in[p] = true;
        members.push_back(p);
      }
    }
  return in;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::vector<Element>> rows) {
  const std::size_t m = rows.size();
  if (m == 0) throw GroupError("group '" + name + "': empty table");
  FiniteGroup g;
  g.name_ = std::move(name);
  g.order_ = m;
  g.table_.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != m)
      throw GroupError("group '" + g.name_ + "': row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(m));
    for (std::size_t j = 0; j < m; ++j) {
      if (rows[i][j] >= m)
        throw GroupError("group '" + g.name_ + "': entry (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") = " + std::to_string(rows[i][j]) + " out of range");
      g.table_.push_back(rows[i][j]);
    }
  }
  for (Element x = 0; x < m; ++x)
    if (g.mul(0, x) != x || g.mul(x, 0) != x)
      throw GroupError("group '" + g.name_ + "': identity axiom fails, element 0 times " + std::to_string(x) +
                       " is not " + std::to_string(x));
  g.inverse_.assign(m, 0);
  for (Element x = 0; x < m; ++x) {
    std::size_t found = 0;
    for (Element y = 0; y < m; ++y)
      if (g.mul(x, y) == 0) {
        if (g.mul(y, x) != 0)
          throw GroupError("group '" + g.name_ + "': inverse axiom fails, " + std::to_string(x) + "*" +
                           std::to_string(y) + " = 0 but " + std::to_string(y) + "*" + std::to_string(x) + " != 0");
        g.inverse_[x] = y;
        ++found;
      }
    if (found != 1)
      throw GroupError("group '" + g.name_ + "': inverse axiom fails, element " + std::to_string(x) + " has " +
                       std::to_string(found) + " right inverses");
  }
  auto check = [&](Element x, Element y, Element z) {
    if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
      throw GroupError("group '" + g.name_ + "': associativity fails at " + triple(x, y, z));
  };
  if (m <= kExhaustiveAssociativity) {
    for (Element x = 0; x < m; ++x)
      for (Element y = 0; y < m; ++y)
        for (Element z = 0; z < m; ++z) check(x, y, z);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(m - 1));
    for (int i = 0; i < kSampledTriples; ++i) check(pick(rng), pick(rng), pick(rng));
  }
  return g;
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> rows(order_);
  for (std::size_t i = 0; i < order_; ++i)
    rows[i].assign(table_.begin() + static_cast<std::ptrdiff_t>(i * order_),
                   table_.begin() + static_cast<std::ptrdiff_t>((i + 1) * order_));
  return rows;
}

Element evaluate_letters(const FiniteGroup& group, std::span<const Letter> letters, Element g, Element h) {
  if (g >= group.order() || h >= group.order()) throw std::out_of_range("element id out of range");
  const Element images[4] = {g, group.inverse(g), h, group.inverse(h)};
  Element acc = FiniteGroup::identity();
  for (Letter x : letters) acc = group.mul(acc, images[index(x)]);
  return acc;
}

Element evaluate_word(const FiniteGroup& group, const Word& w, Element g, Element h) {
  return evaluate_letters(group, w.letters(), g, h);
}

LawCertificate is_law(const FiniteGroup& group, const Word& w, unsigned threads) {
  const std::size_t m = group.order();
  LawCertificate cert;
  cert.word = w;
  cert.group = group.name();
  cert.pairs_checked = static_cast<std::uint64_t>(m) * m;

  // Smallest failing g wins; each g is scanned in full so h is minimal too.
  std::vector<std::optional<Element>> failing_h(m);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t g = next++; g < m; g = next++)
      for (Element h = 0; h < m; ++h)
        if (evaluate_word(group, w, static_cast<Element>(g), h) != FiniteGroup::identity()) {
          failing_h[g] = h;
          break;
        }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(m)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (std::size_t g = 0; g < m; ++g)
    if (failing_h[g]) {
      cert.counterexample = std::make_pair(static_cast<Element>(g), *failing_h[g]);
      break;
    }
  cert.holds = !cert.counterexample.has_value();
  return cert;
}

NilpotencyInfo nilpotency_class(const FiniteGroup& group) {
  NilpotencyInfo info;
  std::vector<Element> current(group.order());
  for (Element x = 0; x < group.order(); ++x) current[x] = x;
  info.series_orders.push_back(current.size());
  while (current.size() > 1) {
    std::vector<Element> gens;
    for (Element x : current)
      for (Element y = 0; y < group.order(); ++y) gens.push_back(group.commutator(x, y));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    auto in = generated_subgroup(group, gens);
    std::vector<Element> next;
    for (Element x = 0; x < group.order(); ++x)
      if (in[x]) next.push_back(x);
    if (next.size() == current.size()) {
      info.nilpotent = false;
      info.nilpotency_class = static_cast<int>(info.series_orders.size());
      return info;
    }
    info.series_orders.push_back(next.size());
    current = std::move(next);
  }
  info.nilpotent = true;
  info.nilpotency_class = static_cast<int>(info.series_orders.size()) - 1;
  return info;
}

int nilpotent_law_level(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("size bound must be at least 2");
  // floor(log2 n) bounds the class plus one for every nilpotent group of
  // order <= n; a nontrivial abelian group still needs depth 2.
  const std::uint64_t target = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::bit_width(n) - 1));
  int m = 0;
  while (fibonacci(m + 2) < target) ++m;
  return m;
}

Word nilpotent_law_word(std::uint64_t n) { return build_pair(nilpotent_law_level(n)).a; }

double nilpotent_law_constant(std::uint64_t n) {
  const double log2n = std::log2(static_cast<double>(n));
  const double exponent = std::log(2.0) / std::log((1.0 + std::sqrt(5.0)) / 2.0);
  return static_cast<double>(predicted_length(nilpotent_law_level(n), Which::A)) / std::pow(log2n, exponent);
}

nlohmann::json to_json(const FiniteGroup& group) {
  return {{"name", group.name()}, {"order", group.order()}, {"table", group.table()}};
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw GroupError("group file: top level must be an object");
  for (const char* key : {"name", "order", "table"})
    if (!j.contains(key)) throw GroupError(std::string("group file: missing field '") + key + "'");
  if (!j["name"].is_string()) throw GroupError("group file: 'name' must be a string");
  if (!j["order"].is_number_unsigned()) throw GroupError("group file: 'order' must be a positive integer");
  if (!j["table"].is_array()) throw GroupError("group file: 'table' must be an array of rows");
  const auto name = j["name"].get<std::string>();
  const auto order = j["order"].get<std::size_t>();
  std::vector<std::vector<Element>> rows;
  for (const auto& row : j["table"]) {
    if (!row.is_array()) throw GroupError("group file: every table row must be an array");
    std::vector<Element> r;
    for (const auto& e : row) {
      if (!e.is_number_unsigned()) throw GroupError("group file: table entries must be non-negative integers");
      r.push_back(e.get<Element>());
    }
    rows.push_back(std::move(r));
  }
  if (rows.size() != order)
    throw GroupError("group '" + name + "': order " + std::to_string(order) + " but table has " +
                     std::to_string(rows.size()) + " rows");
  return FiniteGroup::from_table(name, std::move(rows));
}

FiniteGroup load_group(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open group file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw GroupError("group file " + path.string() + ": " + e.what());
  }
  return group_from_json(j);
}

void save_group(const FiniteGroup& group, const std::filesystem::path& path) {
  std::ofstream out(path);
  nlohmann::json j = to_json(group);
  // One table row per line keeps the files diffable.
  out << "{\"name\": " << j["name"].dump() << ", \"order\": " << group.order() << ", \"table\": [\n";
  const auto rows = group.table();
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << "  " << nlohmann::json(rows[i]).dump() << (i + 1 < rows.size() ? ",\n" : "\n");
  out << "]}\n";
}

std::vector<FiniteGroup> load_catalog(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<FiniteGroup> groups;
  for (const auto& f : files) groups.push_back(load_group(f));
  std::stable_sort(groups.begin(), groups.end(), [](const FiniteGroup& x, const FiniteGroup& y) {
    return x.order() != y.order() ? x.order() < y.order() : x.name() < y.name();
  });
  return groups;
}

std::filesystem::path default_catalog_dir() {
  if (const char* env = std::getenv("FIBGIRTH_CATALOG")) return env;
  return FIBGIRTH_CATALOG_DIR;
}

}  // namespace fibgirth
