#include "fibgirth/serialize.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace fibgirth {

std::string fixed(double x, int digits) { return fmt::format("{:.{}f}", x, digits); }

ordered_json to_json(const GirthRecord& record) {
  ordered_json j;
  j["kind"] = record.kind;
  j["n"] = record.n;
  if (record.value) {
    j["value"] = *record.value;
    j["witness"] = format(*record.witness);
  } else {
    j["value"] = nullptr;
    j["witness"] = nullptr;
  }
  j["radius"] = record.radius;
  if (!record.value && record.upper_bound) j["upper_bound"] = *record.upper_bound;
  j["candidates"] = record.candidates;
  j["seconds"] = record.seconds;
  return j;
}

GirthRecord girth_record_from_json(const ordered_json& j) {
  GirthRecord r;
  try {
    r.kind = j.at("kind").get<std::string>();
    r.n = j.at("n").get<int>();
    if (!j.at("value").is_null()) {
      r.value = j.at("value").get<std::size_t>();
      r.witness = parse(j.at("witness").get<std::string>());
    }
    r.radius = j.at("radius").get<std::size_t>();
    if (j.contains("upper_bound")) r.upper_bound = j.at("upper_bound").get<std::size_t>();
    r.candidates = j.at("candidates").get<std::uint64_t>();
    r.seconds = j.at("seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed girth record: ") + e.what());
  }
  return r;
}

ordered_json to_json(const ConstructionPair& pair) {
  ordered_json j;
  j["n"] = pair.level;
  j["variant"] = to_string(pair.variant);
  j["a"] = format(pair.a);
  j["b"] = format(pair.b);
  j["len_a"] = pair.a.length();
  j["len_b"] = pair.b.length();
  j["predicted_len_a"] = pair.predicted_len_a;
  j["predicted_len_b"] = pair.predicted_len_b;
  j["depth_bound"] = pair.depth_bound;
  return j;
}

ordered_json to_json(const DepthResult& depth) {
  ordered_json j;
  switch (depth.kind) {
    case DepthResult::Kind::Identity:
      j["kind"] = "identity";
      j["value"] = nullptr;
      break;
    case DepthResult::Kind::Exact:
      j["kind"] = "exact";
      j["value"] = depth.value;
      break;
    case DepthResult::Kind::AtLeast:
      j["kind"] = "at_least";
      j["value"] = depth.value;
      break;
  }
  j["text"] = depth.to_string();
  return j;
}

ordered_json to_json(const Report& report) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks()) {
    ordered_json item;
    item["name"] = c.name;
    item["ok"] = c.ok;
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  ordered_json j;
  j["ok"] = report.ok();
  j["passed"] = report.checks().size() - report.failures().size();
  j["failed"] = report.failures().size();
  j["checks"] = std::move(checks);
  return j;
}

ordered_json to_json(const LawCertificate& cert) {
  ordered_json j;
  j["group"] = cert.group;
  j["word"] = format(cert.word);
  j["holds"] = cert.holds;
  j["pairs_checked"] = cert.pairs_checked;
  if (cert.counterexample)
    j["counterexample"] = {cert.counterexample->first, cert.counterexample->second};
  return j;
}

namespace {

std::string depth_exact_text(const ExponentRow& row) {
  if (!row.depth_exact) return "";
  if (row.depth_exact->kind == DepthResult::Kind::Exact) return std::to_string(row.depth_exact->value);
  return row.depth_exact->to_string();
}

std::string variant_text(const ExponentRow& row) { return row.label.empty() ? to_string(row.variant) : row.label; }

}  // namespace

ordered_json to_json(const ExponentRow& row) {
  ordered_json j;
  j["n"] = row.n;
  j["variant"] = variant_text(row);
  j["len_a"] = row.len_a;
  j["len_b"] = row.len_b;
  j["depth_bound"] = row.depth_bound;
  if (row.depth_exact && row.depth_exact->kind == DepthResult::Kind::Exact)
    j["depth_exact"] = row.depth_exact->value;
  else
    j["depth_exact"] = nullptr;
  if (row.estimate)
    j["estimate"] = fixed(*row.estimate, 4);
  else
    j["estimate"] = nullptr;
  if (row.flagged) j["flag"] = "depth is a lower bound";
  return j;
}

ordered_json to_json(const std::vector<ExponentRow>& rows) {
  ordered_json j = ordered_json::array();
  for (const auto& r : rows) j.push_back(to_json(r));
  return j;
}

std::string to_csv(const std::vector<ExponentRow>& rows) {
  std::string out = "n,variant,len_a,len_b,depth_bound,depth_exact,estimate\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{},{},{}\n", r.n, variant_text(r), r.len_a, r.len_b, r.depth_bound,
                       depth_exact_text(r), r.estimate ? fixed(*r.estimate, 4) : "");
  return out;
}

ordered_json to_json(const DecayReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["n"] = r.n;
    row["len"] = r.word_length;
    row["L_hat"] = r.L_hat;
    if (r.neg_log)
      row["neg_log"] = *r.neg_log;
    else
      row["neg_log"] = nullptr;
    row["samples"] = r.samples;
    row["seed"] = report.seed;
    if (r.below_float_range) row["below_float_range"] = true;
    rows.push_back(std::move(row));
  }
  ordered_json j;
  j["k"] = report.k;
  j["seed"] = report.seed;
  j["w"] = format(report.w);
  j["v"] = format(report.v);
  j["rows"] = std::move(rows);
  j["fitted_C"] = report.fitted_C ? ordered_json(*report.fitted_C) : ordered_json(nullptr);
  j["fitted_D"] = report.fitted_D ? ordered_json(*report.fitted_D) : ordered_json(nullptr);
  return j;
}

std::string to_csv(const DecayReport& report) {
  std::string out = "n,len,L_hat,neg_log,samples,seed\n";
  for (const auto& r : report.rows)
    out += fmt::format("{},{},{},{},{},{}\n", r.n, r.word_length, r.L_hat,
                       r.neg_log ? fmt::format("{}", *r.neg_log) : "", r.samples, report.seed);
  return out;
}

ordered_json to_json(const SeedSearchResult& result) {
  ordered_json j;
  j["found"] = result.found;
  if (result.found) {
    j["w"] = format(result.w);
    j["v"] = format(result.v);
    j["estimate_w"] = result.estimate_w;
    j["estimate_v"] = result.estimate_v;
    j["free_certified"] = result.free_certified;
    j["free_heuristic"] = result.free_heuristic;
  }
  j["words_examined"] = result.words_examined;
  j["words_surviving_screen"] = result.words_surviving_screen;
  if (!result.smallest_screened_word.empty()) {
    j["smallest_rejected_estimate"] = result.smallest_screened_max;
    j["smallest_rejected_word"] = format(result.smallest_screened_word);
  }
  j["message"] = result.message;
  return j;
}

ordered_json to_json(const ContractionCheck& check) {
  ordered_json j;
  j["samples"] = check.samples;
  j["holding"] = check.holding;
  j["worst_margin"] = check.worst_margin;
  return j;
}

ordered_json to_json(const ProductFormCounterexample& c) {
  ordered_json j;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["refutes"] = c.refutes;
  return j;
}

}  // namespace fibgirth
