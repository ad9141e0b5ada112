#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace ionswap {

std::uint64_t fnv1a64(std::string_view data);
std::string hash_hex(std::string_view data);  // 16 lowercase hex digits

std::string read_file(const std::string& path);               // throws ConfigError
void write_file(const std::string& path, std::string_view payload);  // temp + rename

// Content-addressed record cache. Keys are arbitrary strings describing the
// physics inputs of a record; the payload lands in <dir>/<hash(key)>.json.
// Records are immutable: a put under an existing key must carry the identical
// payload, anything else indicates broken determinism and throws.
class ResultStore {
 public:
  ResultStore() = default;
  explicit ResultStore(std::string dir);

  // Config value unless the environment override IONSWAP_CACHE_DIR is set.
  static ResultStore from_config(const std::string& cache_dir);

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }
  std::string path_for(std::string_view key) const;

  std::optional<std::string> get(std::string_view key) const;
  void put(std::string_view key, std::string_view payload) const;

 private:
  std::string dir_;
  mutable std::mutex mu_;
};

}  // namespace ionswap
