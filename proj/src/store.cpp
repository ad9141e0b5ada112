#include "ionswap/store.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ionswap/errors.hpp"

namespace fs = std::filesystem;

namespace ionswap {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) throw ConfigError("read failed on '" + path + "'");
  return out.str();
}

void write_file(const std::string& path, std::string_view payload) {
  fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory '" + target.parent_path().string() + "'");
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw ConfigError("write failed on '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw ConfigError("cannot move '" + tmp.string() + "' into place");
}

ResultStore::ResultStore(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create cache directory '" + dir_ + "'");
}

ResultStore ResultStore::from_config(const std::string& cache_dir) {
  if (const char* env = std::getenv("IONSWAP_CACHE_DIR"); env && *env) {
    return ResultStore(env);
  }
  return ResultStore(cache_dir);
}

std::string ResultStore::path_for(std::string_view key) const {
  return (fs::path(dir_) / (hash_hex(key) + ".json")).string();
}

std::optional<std::string> ResultStore::get(std::string_view key) const {
  if (!enabled()) return std::nullopt;
  std::lock_guard<std::mutex> lock(mu_);
  std::string path = path_for(key);
  if (!fs::exists(path)) return std::nullopt;
  return read_file(path);
}

void ResultStore::put(std::string_view key, std::string_view payload) const {
  if (!enabled()) return;
  std::lock_guard<std::mutex> lock(mu_);
  std::string path = path_for(key);
  if (fs::exists(path)) {
    if (read_file(path) != payload) {
      throw NumericsError("cache record '" + path + "' differs from a recomputed payload");
    }
    return;
  }
  write_file(path, payload);
}

}  // namespace ionswap
