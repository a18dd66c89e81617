#include "shiftlab/layer_cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

LayerCache::LayerCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 3)
      throw ConfigError(file_.string() + ":" + std::to_string(lineno) + ": expected at least 3 fields");
    CacheRecord r;
    r.family = fields[0];
    try {
      r.n = std::stoul(fields[1]);
      r.count = Count(fields[2]);
    } catch (const std::exception&) {
      throw ConfigError(file_.string() + ":" + std::to_string(lineno) + ": malformed n or count");
    }
    if (fields.size() > 3 && fields[3] != "-") {
      std::vector<Word> words;
      if (!fields[3].empty())
        for (const auto& tok : split(fields[3], ',')) words.push_back(parse_word(tok));
      r.words = std::move(words);
    }
    records_[{r.family, r.n}] = std::move(r);
  }
}

std::string LayerCache::family_id(const LanguageOracle& language) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : language.fingerprint()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return language.name() + "@" + hex;
}

std::filesystem::path LayerCache::default_path() {
  if (const char* dir = std::getenv("SHIFTLAB_CACHE_DIR"); dir && *dir)
    return std::filesystem::path(dir) / "layers.tsv";
  return std::filesystem::path(".shiftlab-cache") / "layers.tsv";
}

std::optional<Count> LayerCache::count(const std::string& family, std::size_t n) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find({family, n});
  if (it == records_.end()) return std::nullopt;
  return it->second.count;
}

std::optional<std::vector<Word>> LayerCache::words(const std::string& family, std::size_t n) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find({family, n});
  if (it == records_.end()) return std::nullopt;
  return it->second.words;
}

void LayerCache::put(CacheRecord record) {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(record.family, record.n);
  records_[key] = std::move(record);
}

std::size_t LayerCache::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

void LayerCache::save() const {
  if (file_.empty()) return;
  std::lock_guard lock(mutex_);
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  const auto tmp = std::filesystem::path(file_.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ConfigError("cannot write cache file " + tmp.string());
    out << "# family-id\tn\tcount\twords\n";
    for (const auto& [key, r] : records_) {
      out << r.family << '\t' << r.n << '\t' << r.count.str() << '\t';
      if (!r.words) {
        out << '-';
      } else {
        for (std::size_t i = 0; i < r.words->size(); ++i) {
          if (i) out << ',';
          out << format_word((*r.words)[i]);
        }
      }
      out << '\n';
    }
  }
  std::filesystem::rename(tmp, file_);
}

std::vector<Count> cached_count_series(const LanguageOracle& language, std::size_t n,
                                       LayerCache& cache, const EnumerationConfig& config) {
  const std::string family = LayerCache::family_id(language);
  std::vector<Count> out;
  out.reserve(n);
  for (std::size_t len = 1; len <= n; ++len) {
    auto hit = cache.count(family, len);
    if (!hit) break;
    out.push_back(*hit);
  }
  if (out.size() == n) return out;
  auto fresh = count_series(language, n, config);
  for (std::size_t len = out.size() + 1; len <= n; ++len)
    cache.put(CacheRecord{family, len, fresh[len - 1], std::nullopt});
  return fresh;
}

}  // namespace shiftlab
