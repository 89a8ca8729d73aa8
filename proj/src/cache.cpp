#include "fibgirth/cache.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <unistd.h>

namespace fibgirth {

std::string to_string(CacheKind kind) {
  switch (kind) {
    case CacheKind::Alpha: return "alpha";
    case CacheKind::Depth: return "depth";
    case CacheKind::Decay: return "decay";
    case CacheKind::Law: return "law";
  }
  return "?";
}

CacheKind parse_cache_kind(const std::string& text) {
  if (text == "alpha") return CacheKind::Alpha;
  if (text == "depth") return CacheKind::Depth;
  if (text == "decay") return CacheKind::Decay;
  if (text == "law") return CacheKind::Law;
  throw std::invalid_argument("unknown cache kind '" + text + "'");
}

ordered_json to_json(const CacheEntry& entry) {
  ordered_json j;
  j["kind"] = to_string(entry.kind);
  j["key"] = entry.key;
  j["payload"] = entry.payload;
  j["created"] = entry.created;
  j["tool_version"] = entry.tool_version;
  return j;
}

CacheEntry cache_entry_from_json(const ordered_json& j) {
  CacheEntry e;
  e.kind = parse_cache_kind(j.at("kind").get<std::string>());
  e.key = j.at("key");
  e.payload = j.at("payload");
  e.created = j.at("created").get<std::string>();
  e.tool_version = j.at("tool_version").get<std::string>();
  return e;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::vector<CacheEntry> ResultCache::entries() const {
  std::vector<CacheEntry> out;
  std::ifstream in(journal());
  if (!in) return out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(cache_entry_from_json(ordered_json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("{}:{}: corrupt cache entry: {}", journal().string(), lineno, e.what()));
    }
  }
  return out;
}

std::optional<CacheEntry> ResultCache::lookup(CacheKind kind, const ordered_json& key) const {
  std::lock_guard lock(mutex_);
  std::optional<CacheEntry> found;
  for (auto& e : entries())
    if (e.kind == kind && e.key == key && e.tool_version == kToolVersion) found = std::move(e);
  return found;
}

void ResultCache::append(CacheEntry entry) {
  std::lock_guard lock(mutex_);
  if (entry.created.empty())
    entry.created = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));

  std::string existing;
  if (std::ifstream in{journal(), std::ios::binary}) {
    std::ostringstream buf;
    buf << in.rdbuf();
    existing = buf.str();
    if (!existing.empty() && existing.back() != '\n') existing += '\n';
  }
  const auto tmp = dir_ / fmt::format(".journal.{}.tmp", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << existing << to_json(entry).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, journal());
}

std::optional<std::filesystem::path> default_cache_dir() {
  const char* env = std::getenv(kCacheDirEnv);
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

}  // namespace fibgirth
