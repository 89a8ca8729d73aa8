#include "fibgirth/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fibgirth/cache.hpp"
#include "fibgirth/construction.hpp"
#include "fibgirth/finite_group.hpp"
#include "fibgirth/girth.hpp"
#include "fibgirth/group_catalog.hpp"
#include "fibgirth/magnus.hpp"
#include "fibgirth/serialize.hpp"
#include "fibgirth/unitary.hpp"

namespace fibgirth {
namespace {

constexpr int kLadderLevels = 5;  // a_5 needs cap 13, inside the default cap

struct Options {
  // build
  int build_n = 0;
  std::string variant = "standard";
  // depth
  std::string word;
  int cap = kDefaultMagnusCap;
  bool allow_large_cap = false;
  // alpha
  int alpha_n = 0;
  std::size_t radius = 0;
  unsigned threads = 1;
  std::string cache_dir;
  // verify
  int level = 12;
  std::size_t verify_radius = 10;
  // law
  std::uint64_t order = 0;
  std::vector<std::string> group_files;
  bool catalog = false;
  // almost
  int k = 2;
  int n_max = 8;
  std::uint64_t budget = 1000;
  int refine = 0;
  std::uint64_t seed = 0;
  std::size_t length_cap = 8;
  std::string seed_words;
  bool csv = false;
  // table
  std::string format = "csv";
  std::string depth_mode = "bound";
  std::vector<std::string> extra_words;

  bool json = false;
};

void print_report(std::ostream& out, const Report& report) {
  for (const auto& c : report.checks()) {
    fmt::print(out, "{} {}", c.ok ? "ok  " : "FAIL", c.name);
    if (!c.ok && !c.detail.empty()) fmt::print(out, ": {}", c.detail);
    out << '\n';
  }
  fmt::print(out, "{} checks, {} failed\n", report.checks().size(), report.failures().size());
}

int cmd_build(const Options& o, std::ostream& out) {
  const ConstructionPair p = build_pair(o.build_n, parse_variant(o.variant));
  if (o.json) {
    out << to_json(p).dump() << '\n';
    return kExitOk;
  }
  const char* prime = p.variant == Variant::Primed ? "'" : "";
  fmt::print(out, "a{}_{} = {}\n", prime, p.level, format(p.a));
  fmt::print(out, "b{}_{} = {}\n", prime, p.level, format(p.b));
  fmt::print(out, "len(a{}_{}) = {}\n", prime, p.level, p.a.length());
  fmt::print(out, "len(b{}_{}) = {}\n", prime, p.level, p.b.length());
  fmt::print(out, "depth >= {}\n", p.depth_bound);
  return kExitOk;
}

int cmd_depth(const Options& o, std::ostream& out) {
  const Word w = parse(o.word);
  const DepthResult d = lcs_depth(w, o.cap, o.allow_large_cap);
  if (o.json) {
    ordered_json j;
    j["word"] = format(w);
    j["length"] = w.length();
    j["cap"] = o.cap;
    j["depth"] = to_json(d);
    out << j.dump() << '\n';
  } else {
    out << d.to_string() << '\n';
  }
  return kExitOk;
}

int cmd_alpha(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.alpha_n < 1) throw std::invalid_argument("-n must be at least 1");
  if (o.radius < 1) throw std::invalid_argument("--radius must be at least 1");
  std::optional<ResultCache> cache;
  if (!o.cache_dir.empty())
    cache.emplace(o.cache_dir);
  else if (auto dir = default_cache_dir())
    cache.emplace(*dir);

  ordered_json key;
  key["n"] = o.alpha_n;
  key["radius"] = o.radius;
  if (cache) {
    if (auto hit = cache->lookup(CacheKind::Alpha, key)) {
      out << hit->payload.dump() << '\n';
      return kExitOk;
    }
  }
  const GirthRecord record = alpha(o.alpha_n, o.radius, o.threads);
  const ordered_json payload = to_json(record);
  if (cache) {
    CacheEntry entry;
    entry.kind = CacheKind::Alpha;
    entry.key = key;
    entry.payload = payload;
    try {
      cache->append(std::move(entry));
    } catch (const std::exception& e) {
      fmt::print(err, "warning: cache write failed: {}\n", e.what());
    }
  }
  out << payload.dump() << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Report report = verify_suite(o.level, o.verify_radius, o.threads);
  if (o.json)
    out << to_json(report).dump() << '\n';
  else
    print_report(out, report);
  return report.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_law(const Options& o, std::ostream& out) {
  if (o.order < 2) throw std::invalid_argument("--order must be at least 2");
  const int level = nilpotent_law_level(o.order);
  const Word w = nilpotent_law_word(o.order);

  std::vector<FiniteGroup> groups;
  std::size_t skipped = 0;
  for (const auto& file : o.group_files) groups.push_back(load_group(file));
  if (o.catalog) {
    for (auto& g : load_catalog(default_catalog_dir())) {
      if (g.order() <= o.order)
        groups.push_back(std::move(g));
      else
        ++skipped;
    }
  }

  bool all_hold = true;
  ordered_json results = ordered_json::array();
  if (!o.json) {
    fmt::print(out, "law for nilpotent groups of order <= {}: a_{} (length {})\n", o.order, level, w.length());
    fmt::print(out, "{}\n", format(w));
  }
  for (const auto& g : groups) {
    const NilpotencyInfo info = nilpotency_class(g);
    const LawCertificate cert = is_law(g, w, o.threads);
    all_hold = all_hold && cert.holds;
    if (o.json) {
      ordered_json j = to_json(cert);
      j["order"] = g.order();
      j["nilpotent"] = info.nilpotent;
      if (info.nilpotent) j["class"] = info.nilpotency_class;
      results.push_back(std::move(j));
      continue;
    }
    std::string cls = info.nilpotent ? fmt::format("class {}", info.nilpotency_class) : "not nilpotent";
    std::string verdict = cert.holds ? fmt::format("holds ({} pairs)", cert.pairs_checked)
                                     : fmt::format("FAILS at (g, h) = ({}, {})", cert.counterexample->first,
                                                   cert.counterexample->second);
    fmt::print(out, "{:<12} order {:>3}  {:<14} {}\n", g.name(), g.order(), cls, verdict);
  }
  if (o.json) {
    ordered_json j;
    j["order"] = o.order;
    j["level"] = level;
    j["word"] = format(w);
    j["groups"] = std::move(results);
    if (skipped) j["skipped_larger"] = skipped;
    out << j.dump() << '\n';
  } else if (skipped) {
    fmt::print(out, "{} catalog groups of order > {} skipped\n", skipped, o.order);
  }
  return all_hold ? kExitOk : kExitVerifyFailed;
}

std::pair<Word, Word> parse_word_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--seed-words expects W,V");
  return {parse(text.substr(0, comma)), parse(text.substr(comma + 1))};
}

int cmd_almost(const Options& o, std::ostream& out) {
  if (o.k < 1 || o.k > kMaxUnitaryDim) throw std::invalid_argument("-k must lie in 1..8");
  if (o.n_max < 0) throw std::invalid_argument("--n-max must be non-negative");
  SamplingOptions sampling;
  sampling.budget = o.budget;
  sampling.refine = o.refine;
  sampling.seed = o.seed;
  sampling.threads = o.threads;

  Report checks;
  const ContractionCheck contraction = check_commutator_contraction(o.k, o.budget, o.seed);
  checks.add("commutator contraction", contraction.holding == contraction.samples,
             fmt::format("{}/{} samples", contraction.holding, contraction.samples));
  const ProductFormCounterexample pf = product_form_counterexample(o.k, o.seed);
  checks.add("product form refuted at u2 = I", pf.refutes, fmt::format("{} > {}", pf.lhs, pf.rhs));

  std::optional<SeedSearchResult> search;
  Word w = Word::generator(Letter::a), v = Word::generator(Letter::b);
  if (!o.seed_words.empty()) {
    std::tie(w, v) = parse_word_pair(o.seed_words);
  } else if (o.k >= 2) {
    search = find_seed_pair(o.k, o.length_cap, sampling);
    checks.add("seed pair found", search->found, search->message);
    if (search->found) {
      w = search->w;
      v = search->v;
    }
  }
  const DecayReport decay = decay_report(o.k, o.n_max, w, v, sampling);
  checks.merge(check_decay(decay));

  if (o.json) {
    ordered_json j;
    j["k"] = o.k;
    j["seed"] = o.seed;
    j["budget"] = o.budget;
    j["refine"] = o.refine;
    j["contraction"] = to_json(contraction);
    j["product_form"] = to_json(pf);
    j["seed_search"] = search ? to_json(*search) : ordered_json(nullptr);
    j["decay"] = to_json(decay);
    j["checks"] = to_json(checks);
    out << j.dump() << '\n';
  } else if (o.csv) {
    out << to_csv(decay);
  } else {
    fmt::print(out, "SU({}), seed {}, budget {}, refine {}\n", o.k, o.seed, o.budget, o.refine);
    fmt::print(out, "contraction: {}/{} samples, worst margin {:.3g}\n", contraction.holding, contraction.samples,
               contraction.worst_margin);
    fmt::print(out, "product form at u2 = I: {:.6f} vs {:.6f}\n", pf.lhs, pf.rhs);
    if (search) fmt::print(out, "seed search: {}\n", search->message);
    fmt::print(out, "decay for w = {}, v = {}\n", format(w), format(v));
    fmt::print(out, "{:>3} {:>10} {:>14} {:>12}\n", "n", "len", "L_hat", "-log(2L)");
    for (const auto& r : decay.rows)
      fmt::print(out, "{:>3} {:>10} {:>14.6e} {:>12}\n", r.n, r.word_length, r.L_hat,
                 r.below_float_range ? "below float" : (r.neg_log ? fmt::format("{:.6f}", *r.neg_log) : ""));
    if (decay.fitted_C) fmt::print(out, "empirical C = {:.6g}, D = {:.6g}\n", *decay.fitted_C, *decay.fitted_D);
    print_report(out, checks);
  }
  return checks.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_table(const Options& o, std::ostream& out) {
  if (o.n_max < 0) throw std::invalid_argument("--n-max must be non-negative");
  std::vector<ExponentRow> rows = exponent_table(o.n_max, parse_depth_mode(o.depth_mode), o.cap);
  for (const auto& text : o.extra_words) rows.push_back(exponent_row_for(parse(text), o.cap));
  if (o.format == "json")
    out << to_json(rows).dump() << '\n';
  else
    out << to_csv(rows);
  return kExitOk;
}

}  // namespace

Report verify_suite(int level, std::size_t radius, unsigned threads) {
  if (level < 0) throw std::invalid_argument("--level must be non-negative");
  Report report;
  for (int n = 0; n <= level; ++n) report.merge(verify_level(n));

  const auto primed = build_levels(level, Variant::Primed);
  for (int n = 0; n <= level; ++n) {
    const auto& p = primed[n];
    const std::uint64_t expected = std::uint64_t{1} << n;
    report.add("len(a'_" + std::to_string(n) + ") = 2^n", p.a.length() == expected,
               std::to_string(p.a.length()));
    report.add("len(b'_" + std::to_string(n) + ") = 2^n", p.b.length() == expected,
               std::to_string(p.b.length()));
  }
  report.merge(verify_commutator_shifts());

  for (int n = 0; n <= std::min(level, kLadderLevels); ++n) {
    const auto p = build_pair(n);
    const DepthResult da = lcs_depth(p.a, kDefaultMagnusCap);
    const DepthResult db = lcs_depth(p.b, kDefaultMagnusCap);
    const std::string at = " at n=" + std::to_string(n);
    report.add("depth(a_n) >= f_{n+2}" + at, da.member_of(static_cast<int>(p.depth_bound)),
               da.to_string() + " vs " + std::to_string(p.depth_bound));
    report.add("depth(a_n) = depth(b_n)" + at, da == db, da.to_string() + " vs " + db.to_string());
  }

  report.merge(verify_girth_facts(radius, threads));

  const Word law16 = nilpotent_law_word(16);
  report.expect_equal("law word for order <= 16 is a_3", law16, build_pair(3).a);
  for (const auto& g : catalog::nilpotent_catalog()) {
    const std::uint64_t bound = std::max<std::uint64_t>(g.order(), 2);
    const LawCertificate cert = is_law(g, nilpotent_law_word(bound), threads);
    report.add("law a_" + std::to_string(nilpotent_law_level(bound)) + " on " + g.name(), cert.holds);
  }
  for (const auto& g : catalog::control_catalog()) {
    const LawCertificate cert = is_law(g, commutator(Word::generator(Letter::a), Word::generator(Letter::b)));
    report.add("[a,b] fails on " + g.name(), !cert.holds);
  }
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Fibonacci commutator words: construction, depth, girth, laws and almost laws", "fibgirth"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", kToolVersion);

  auto* build = app.add_subcommand("build", "build a_n and b_n");
  build->add_option("-n", o.build_n, "level")->required()->check(CLI::Range(0, kDefaultMaxLevel));
  build->add_option("--variant", o.variant, "standard or primed")
      ->check(CLI::IsMember({"standard", "primed"}));
  build->add_flag("--json", o.json);

  auto* depth = app.add_subcommand("depth", "lower central series depth of a word");
  depth->add_option("-w", o.word, "word over a, A, b, B (e for the identity)")->required();
  depth->add_option("--cap", o.cap, "truncation degree")->required();
  depth->add_flag("--allow-large-cap", o.allow_large_cap, "permit caps above 20");
  depth->add_flag("--json", o.json);

  auto* alpha_cmd = app.add_subcommand("alpha", "shortest nontrivial word in gamma_n");
  alpha_cmd->add_option("-n", o.alpha_n, "series index")->required();
  alpha_cmd->add_option("--radius", o.radius, "largest length to search")->required();
  alpha_cmd->add_option("-j,--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  alpha_cmd->add_option("--cache", o.cache_dir, std::string("cache directory (default $") + kCacheDirEnv + ")");

  auto* verify = app.add_subcommand("verify", "check every identity");
  verify->add_option("--level", o.level, "largest construction level");
  verify->add_option("--radius", o.verify_radius, "girth search radius");
  verify->add_option("-j,--threads", o.threads)->check(CLI::PositiveNumber);
  verify->add_flag("--json", o.json);

  auto* law = app.add_subcommand("law", "nilpotent group laws");
  law->add_option("--order", o.order, "group order bound")->required();
  auto* group_opt = law->add_option("--group", o.group_files, "group table file")->check(CLI::ExistingFile);
  law->add_flag("--catalog", o.catalog, "check the bundled catalog")->excludes(group_opt);
  law->add_option("-j,--threads", o.threads)->check(CLI::PositiveNumber);
  law->add_flag("--json", o.json);

  auto* almost = app.add_subcommand("almost", "almost laws on SU(k)");
  almost->add_option("-k", o.k, "matrix size");
  almost->add_option("--n-max", o.n_max, "largest level");
  almost->add_option("--budget", o.budget, "Haar samples")->check(CLI::PositiveNumber);
  almost->add_option("--refine", o.refine, "hill-climbing steps per sample")->check(CLI::NonNegativeNumber);
  auto* seed_opt = almost->add_option("--seed", o.seed, "master seed");
  almost->add_option("--length-cap", o.length_cap, "seed search word length");
  almost->add_option("--seed-words", o.seed_words, "use W,V instead of searching");
  almost->add_option("-j,--threads", o.threads)->check(CLI::PositiveNumber);
  auto* json_opt = almost->add_flag("--json", o.json);
  almost->add_flag("--csv", o.csv, "decay rows only")->excludes(json_opt);

  auto* table = app.add_subcommand("table", "length/depth exponent table");
  table->add_option("--n-max", o.n_max, "largest level")->required();
  table->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--depth-mode", o.depth_mode)->check(CLI::IsMember({"bound", "magnus"}));
  table->add_option("--cap", o.cap, "Magnus truncation degree");
  table->add_option("--word", o.extra_words, "extra word rows");

  std::vector<const char*> argv{"fibgirth"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (almost->parsed() && o.json && seed_opt->count() == 0)
      throw CLI::ValidationError("--seed", "required with --json");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(o, out);
    if (depth->parsed()) return cmd_depth(o, out);
    if (alpha_cmd->parsed()) return cmd_alpha(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out);
    if (law->parsed()) return cmd_law(o, out);
    if (almost->parsed()) return cmd_almost(o, out);
    if (table->parsed()) return cmd_table(o, out);
  } catch (const ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::length_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  return run(args, out, err);
}

}  // namespace fibgirth
