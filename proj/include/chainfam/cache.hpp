#pragma once

// Append-only result cache: one JSON object per line, keyed by a canonical
// command string. Reruns with a known key are served verbatim from the cache,
// so cached rows (timestamps included) are byte-stable across runs.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "chainfam/core.hpp"

namespace chainfam {

inline std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class ResultCache {
 public:
  explicit ResultCache(std::string path) : path_(std::move(path)) {}

  static std::string default_path() {
    if (const char* env = std::getenv("CHAINFAM_CACHE")) return env;
    return "chainfam_cache.jsonl";
  }

  const std::string& path() const { return path_; }

  // Last row with the given key, as the raw stored line.
  std::optional<std::string> lookup_raw(const std::string& key) const {
    std::ifstream in(path_);
    if (!in) return std::nullopt;
    std::string line, found;
    bool any = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto row = nlohmann::json::parse(line, nullptr, false);
      if (row.is_discarded() || !row.contains("key")) continue;
      if (row["key"] == key) {
        found = line;
        any = true;
      }
    }
    if (!any) return std::nullopt;
    return found;
  }

  std::optional<nlohmann::json> lookup(const std::string& key) const {
    auto raw = lookup_raw(key);
    if (!raw) return std::nullopt;
    return nlohmann::json::parse(*raw);
  }

  // One row per call, written as a single line; the row must carry its key.
  void append(const nlohmann::json& row) const {
    append_line(row.dump());
  }

  void append_line(const std::string& line) const {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache file '" + path_ + "' for append");
    out << line << '\n';
    out.flush();
  }

 private:
  std::string path_;
};

}  // namespace chainfam
