#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/language.hpp"

namespace shiftlab {

/// One cached layer. On disk: `family-id <TAB> n <TAB> count <TAB> words`,
/// where words is a comma-separated list of format_word() strings or "-".
struct CacheRecord {
  std::string family;
  std::size_t n = 0;
  Count count = 0;
  std::optional<std::vector<Word>> words;
};

/// Persistent per-family word counts (and optionally word lists).
///
/// Family ids hash the oracle fingerprint, so changing any defining parameter
/// (beta digits, gap set, generator list) selects a fresh family.
class LayerCache {
public:
  LayerCache() = default;
  /// Loads `file` when it exists; save() writes back to it.
  explicit LayerCache(std::filesystem::path file);

  LayerCache(const LayerCache&) = delete;
  LayerCache& operator=(const LayerCache&) = delete;

  static std::string family_id(const LanguageOracle& language);
  /// $SHIFTLAB_CACHE_DIR/layers.tsv, or ./.shiftlab-cache/layers.tsv
  static std::filesystem::path default_path();

  std::optional<Count> count(const std::string& family, std::size_t n) const;
  std::optional<std::vector<Word>> words(const std::string& family, std::size_t n) const;
  void put(CacheRecord record);
  std::size_t size() const;

  /// Atomic write: temp file then rename. No-op for a cache without a file.
  void save() const;
  const std::filesystem::path& file() const noexcept { return file_; }

private:
  std::filesystem::path file_;
  std::map<std::pair<std::string, std::size_t>, CacheRecord> records_;
  mutable std::mutex mutex_;
};

/// #L_1..#L_n, served from the cache where possible and recorded otherwise.
std::vector<Count> cached_count_series(const LanguageOracle& language, std::size_t n,
                                       LayerCache& cache, const EnumerationConfig& config = {});

}  // namespace shiftlab
