#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fibgirth/serialize.hpp"

namespace fibgirth {

inline constexpr const char* kToolVersion = "0.1.0";

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "FIBGIRTH_CACHE_DIR";

enum class CacheKind { Alpha, Depth, Decay, Law };
std::string to_string(CacheKind kind);
CacheKind parse_cache_kind(const std::string& text);

struct CacheEntry {
  CacheKind kind = CacheKind::Alpha;
  ordered_json key;
  ordered_json payload;
  std::string created;  // UTC, ISO 8601
  std::string tool_version = kToolVersion;
};

ordered_json to_json(const CacheEntry& entry);
CacheEntry cache_entry_from_json(const ordered_json& j);

/// Append-only JSON-lines journal in `dir`. Every append rewrites the journal
/// into a temporary file and renames it over the old one, so an interrupted
/// run leaves either the old or the new journal, never a torn line.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path journal() const { return dir_ / "journal.jsonl"; }

  /// Stamps `created` when empty.
  void append(CacheEntry entry);
  /// Latest entry with this kind, key and the current tool version.
  std::optional<CacheEntry> lookup(CacheKind kind, const ordered_json& key) const;
  /// Throws std::runtime_error naming the line on a corrupt journal.
  std::vector<CacheEntry> entries() const;

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

/// $FIBGIRTH_CACHE_DIR, if set and non-empty.
std::optional<std::filesystem::path> default_cache_dir();

}  // namespace fibgirth
