// Acceptance gate: one PASS/FAIL line per criterion. `acceptance 3 5` runs
// criteria 3 and 5; no arguments runs all of them.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fibgirth/cli.hpp"
#include "fibgirth/construction.hpp"
#include "fibgirth/finite_group.hpp"
#include "fibgirth/girth.hpp"
#include "fibgirth/group_catalog.hpp"
#include "fibgirth/serialize.hpp"
#include "fibgirth/unitary.hpp"

using namespace fibgirth;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, std::string what) {
    if (!cond) ok = false;
    notes.push_back((cond ? "ok: " : "FAILED: ") + std::move(what));
  }
  void note(std::string what) { notes.push_back(std::move(what)); }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double truncate3(double x) { return std::floor(x * 1000.0 + 1e-9) / 1000.0; }

std::string run_cli(std::vector<std::string> args, int* code = nullptr) {
  std::ostringstream out, err;
  const int c = run(args, out, err);
  if (code) *code = c;
  return out.str();
}

Outcome criterion_1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto levels = build_levels(20);
  bool all = true;
  for (int n = 0; n <= 20; ++n) {
    const std::int64_t p = 13 * (std::int64_t{1} << n);
    const std::int64_t ca[] = {-6, 2, 4}, cb[] = {8, 2, 4};
    all = all && levels[n].a.length() == static_cast<std::uint64_t>((p + ca[n % 3]) / 7) &&
          levels[n].b.length() == static_cast<std::uint64_t>((p + cb[n % 3]) / 7);
  }
  o.require(all, "closed forms for l(a_n), l(b_n), n = 0..20");
  const std::pair<int, std::pair<std::uint64_t, std::uint64_t>> known[] = {
      {3, {14, 16}}, {4, {30, 30}}, {5, {60, 60}}, {6, {118, 120}}};
  for (const auto& [n, lens] : known)
    o.require(levels[n].a.length() == lens.first && levels[n].b.length() == lens.second,
              fmt::format("l(a_{0}) = {1}, l(b_{0}) = {2}", n, lens.first, lens.second));
  const double t = since(t0);
  o.require(t < 1.0, fmt::format("runtime {:.3f} s < 1 s", t));
  return o;
}

Outcome criterion_2() {
  Outcome o;
  const auto t0 = Clock::now();
  const Report shifts = verify_commutator_shifts(200, 7);
  o.require(shifts.ok(), fmt::format("[w1,w2] = [w1 w2^n, w2] = [w1, w2 w1^n], n = -3..3 ({} checks)",
                                     shifts.checks().size()));
  const auto L = build_levels(13);
  const Word a = parse("a"), A = parse("A");
  bool rel = true;
  for (int n = 0; n <= 12; ++n) {
    switch (n % 3) {
      case 0: rel = rel && concat_all({a, sigma(L[n].a), A}) == L[n].b; break;
      case 1: rel = rel && tau(L[n].a) == L[n].b; break;
      case 2: rel = rel && tau(L[n].a) == invert(L[n].b); break;
    }
  }
  o.require(rel, "sigma/tau relations between a_n and b_n, n <= 12");
  bool three = true;
  for (int n = 0; n <= 9; ++n) {
    const Word &an = L[n].a, &bn = L[n].b;
    three = three && L[n + 3].a == commutator(concat(an, bn), concat(invert(an), invert(bn))) &&
            L[n + 3].b == commutator(concat(bn, an), concat(invert(bn), invert(an)));
  }
  o.require(three, "a_{n+3} = [a_n b_n, a_n^-1 b_n^-1], b_{n+3} = [b_n a_n, b_n^-1 a_n^-1], n <= 9");
  bool two = true;
  for (int n = 0; n <= 10; ++n)
    two = two && L[n + 2].a == commutator(L[n].a, L[n].b) && L[n + 2].a == commutator(L[n + 1].a, L[n].b);
  o.require(two, "a_{n+2} = [a_n, b_n] = [a_{n+1}, b_n], n <= 10");
  const double t = since(t0);
  o.require(t < 1.0, fmt::format("runtime {:.3f} s < 1 s", t));
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const auto t0 = Clock::now();
  const int expected[] = {1, 2, 3, 5, 8, 13};
  std::string got;
  for (int n = 0; n <= 5; ++n) {
    const auto p = build_pair(n);
    const DepthResult da = lcs_depth(p.a, 14), db = lcs_depth(p.b, 14);
    got += (n ? " " : "") + da.to_string();
    o.require(da == DepthResult::exact(expected[n]) && da.member_of(static_cast<int>(fibonacci(n + 2))) && da == db,
              fmt::format("a_{0}: {1} >= f_{2} = {3}, b_{0}: {4}", n, da.to_string(), n + 2, fibonacci(n + 2),
                          db.to_string()));
  }
  o.note("ladder: " + got);
  const double t = since(t0);
  o.require(t < 120.0, fmt::format("runtime {:.2f} s < 120 s", t));
  return o;
}

Outcome criterion_4() {
  Outcome o;
  auto t0 = Clock::now();
  const std::size_t expected[] = {0, 1, 4, 8};
  for (int n = 1; n <= 3; ++n) {
    const GirthRecord r = alpha(n, 10);
    const bool witness_ok = r.witness && r.witness->length() == expected[n] && lcs_member(*r.witness, n);
    const GirthRecord naive = alpha_naive(n, 8);
    o.require(r.value == expected[n] && witness_ok && naive.value == r.value,
              fmt::format("alpha({}) = {} witness {} (naive enumerator: {})", n,
                          r.value ? std::to_string(*r.value) : "unknown", r.witness ? format(*r.witness) : "-",
                          naive.value ? std::to_string(*naive.value) : "unknown"));
  }
  double t = since(t0);
  o.require(t < 60.0, fmt::format("alpha(1..3) runtime {:.2f} s < 60 s", t));

  t0 = Clock::now();
  const GirthRecord first = alpha(4, 16, 8);
  t = since(t0);
  const GirthRecord second = alpha(4, 16, 8);
  auto stripped = [](const GirthRecord& r) {
    ordered_json j = to_json(r);
    j.erase("seconds");
    return j.dump();
  };
  o.require(first.value.has_value(), fmt::format("alpha(4) within radius 16: {}", to_json(first).dump()));
  if (first.witness) o.require(lcs_member(*first.witness, 4), "alpha(4) witness lies in gamma_4");
  o.require(stripped(first) == stripped(second), "alpha(4) record identical across two runs (timing excluded)");
  o.require(t < 1800.0, fmt::format("alpha(4) runtime {:.2f} s < 1800 s on 8 threads", t));
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const Word w28 = girth_word_28();
  o.require(w28.length() == 28, fmt::format("l(w28) = {}", w28.length()));
  o.require(lcs_member(w28, 7), "w28 in gamma_7");
  const auto rows = exponent_table(4, DepthMode::Magnus);
  const ExponentRow w_row = exponent_row_for(w28);
  const double nu = rows[4].estimate.value_or(0), mu = w_row.estimate.value_or(0);
  o.require(truncate3(nu) == 0.611, fmt::format("a_4 exponent {} -> {:.3f}", fixed(nu, 4), truncate3(nu)));
  o.require(truncate3(mu) == 0.583, fmt::format("w28 exponent {} -> {:.3f}", fixed(mu, 4), truncate3(mu)));
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const auto L = build_levels(3);
  o.require(L[3].a == commutator(L[2].a, L[1].b), "a_3 = [a_2, b_1]");
  o.require(lcs_member(L[2].a, 3) && lcs_member(L[1].b, 2), "a_2 in gamma_3, b_1 in gamma_2");
  o.require(L[3].a.length() == 14, "girth([gamma_3, gamma_2]) <= l(a_3) = 14");
  const GirthRecord a2 = alpha(2, 10), a3 = alpha(3, 10);
  const bool have = a2.value && a3.value;
  o.require(have && 14 < 2 * *a3.value, fmt::format("14 < 2 * alpha(3) = {}", have ? 2 * *a3.value : 0));
  o.require(have && 14 > 3 * *a2.value, fmt::format("14 > 3 * alpha(2) = {}", have ? 3 * *a2.value : 0));
  return o;
}

Outcome criterion_7() {
  Outcome o;
  const auto t0 = Clock::now();
  const Word w = nilpotent_law_word(16);
  o.require(w == build_pair(3).a, "nilpotent_law_word(16) = a_3 = " + format(w));
  const auto groups = load_catalog(default_catalog_dir());
  std::size_t checked = 0, failed = 0;
  bool heis = false;
  for (const auto& g : groups) {
    if (g.order() > 16 && g.name() != "Heis3") continue;
    ++checked;
    heis = heis || g.name() == "Heis3";
    if (!nilpotency_class(g).nilpotent || !is_law(g, w).holds) {
      ++failed;
      o.note("law fails on " + g.name());
    }
  }
  o.require(failed == 0 && heis && checked >= 37,
            fmt::format("a_3 is a law on {} bundled nilpotent groups (including Heis3)", checked));
  const FiniteGroup s3 = load_group(default_catalog_dir() / "controls" / "s3.json");
  const LawCertificate c = is_law(s3, parse("abAB"));
  o.require(!c.holds, c.counterexample ? fmt::format("[a,b] fails on S3 at ({}, {})", c.counterexample->first,
                                                     c.counterexample->second)
                                       : "[a,b] fails on S3");
  const double t = since(t0);
  o.require(t < 10.0, fmt::format("runtime {:.2f} s < 10 s", t));
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const auto t0 = Clock::now();
  constexpr std::uint64_t kBudget = 10000, kSeed = 20240601;
  const ContractionCheck c = check_commutator_contraction(2, kBudget, kSeed);
  o.require(c.holding == c.samples && c.samples == kBudget,
            fmt::format("(i) commutator contraction on {}/{} samples, worst margin {:.3g}", c.holding, c.samples,
                        c.worst_margin));
  const ProductFormCounterexample pf = product_form_counterexample(2, kSeed);
  o.require(pf.refutes, fmt::format("(ii) product form refuted at u2 = I: {:.6f} > {:.6f}", pf.lhs, pf.rhs));

  SamplingOptions opts;
  opts.budget = kBudget;
  opts.seed = kSeed;
  opts.refine = 2;
  const SeedSearchResult seed = find_seed_pair(2, 14, opts);
  o.note(fmt::format("seed search: {} words examined, {} passed the screen", seed.words_examined,
                     seed.words_surviving_screen));
  if (!seed.found) {
    o.require(false, "(iii) decay rows need a seed pair with sampled L_2 <= 0.30: " + seed.message);
  } else {
    const DecayReport decay = decay_report(2, 8, seed.w, seed.v, opts);
    const Report checks = check_decay(decay);
    o.require(checks.ok(), fmt::format("(iii) decay rows n <= 8 for seed ({}, {}): {} checks, {} failed",
                                       format(seed.w), format(seed.v), checks.checks().size(),
                                       checks.failures().size()));
  }
  const double t = since(t0);
  o.require(t < 300.0, fmt::format("runtime {:.1f} s < 300 s", t));
  return o;
}

Outcome criterion_9() {
  Outcome o;
  auto strip_seconds = [](const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    j.erase("seconds");
    return j.dump();
  };
  const std::string v1 = run_cli({"verify", "--json"});
  const std::string v2 = run_cli({"verify", "--json"});
  const std::string v4 = run_cli({"verify", "--json", "-j", "4"});
  o.require(!v1.empty() && v1 == v2 && v1 == v4, "verify --json identical across runs and 1/4 threads");

  const std::string a1 = run_cli({"alpha", "-n", "4", "--radius", "16"});
  const std::string a2 = run_cli({"alpha", "-n", "4", "--radius", "16"});
  const std::string a8 = run_cli({"alpha", "-n", "4", "--radius", "16", "-j", "8"});
  o.require(!a1.empty() && strip_seconds(a1) == strip_seconds(a2) && strip_seconds(a1) == strip_seconds(a8),
            "alpha JSON identical across runs and 1/8 threads (timing excluded)");

  const std::vector<std::string> almost = {"almost", "--seed", "17", "--budget", "1000", "--json"};
  auto threaded = almost;
  threaded.insert(threaded.end(), {"-j", "4"});
  const std::string m1 = run_cli(almost), m2 = run_cli(almost), m4 = run_cli(threaded);
  o.require(!m1.empty() && m1 == m2 && m1 == m4, "almost --seed 17 --json identical across runs and 1/4 threads");
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {"length closed forms", criterion_1},
    {"construction identities", criterion_2},
    {"depth ladder", criterion_3},
    {"girth values", criterion_4},
    {"a_4 and w28 fixture", criterion_5},
    {"girth([gamma_3, gamma_2]) bound", criterion_6},
    {"nilpotent laws at desk scale", criterion_7},
    {"almost-law properties on SU(2)", criterion_8},
    {"determinism audit", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i) which.push_back(i);

  bool all = true;
  for (int id : which) {
    if (id < 1 || id > static_cast<int>(kCriteria.size())) {
      std::cerr << "no criterion " << id << '\n';
      return 2;
    }
    const auto& [name, fn] = kCriteria[id - 1];
    Outcome result;
    try {
      result = fn();
    } catch (const std::exception& e) {
      result.require(false, std::string("exception: ") + e.what());
    }
    all = all && result.ok;
    std::cout << (result.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name << '\n';
    for (const auto& n : result.notes) std::cout << "    " << n << '\n';
  }
  return all ? 0 : 1;
}
