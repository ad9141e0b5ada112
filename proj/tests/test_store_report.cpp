// Hashing, file I/O, the content-addressed result cache, and report builders.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "ionswap/errors.hpp"
#include "ionswap/report.hpp"
#include "ionswap/store.hpp"
#include "ionswap/version.hpp"

using namespace ionswap;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp root, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ionswap_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("fnv1a64 reference vectors") {
  // Offset basis and single-byte values of the published 64-bit FNV-1a.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(hash_hex("") == "cbf29ce484222325");
  CHECK(hash_hex("a") == "af63dc4c8601ec8c");
  CHECK(hash_hex("x") != hash_hex("y"));
  CHECK(hash_hex("payload").size() == 16);
}

TEST_CASE("write_file and read_file round trip") {
  TempDir tmp;
  const std::string path = (tmp.path / "nested" / "deeper" / "file.txt").string();
  const std::string payload = "line one\nline two\r\nbinary: \x01\x02\n";
  write_file(path, payload);  // creates parent directories
  CHECK(read_file(path) == payload);
  CHECK_THROWS_AS(read_file((tmp.path / "absent.txt").string()), ConfigError);
}

TEST_CASE("result store put/get and immutability") {
  TempDir tmp;
  ResultStore store(tmp.str());
  REQUIRE(store.enabled());

  CHECK(!store.get("key-1").has_value());
  store.put("key-1", "{\"v\":1}");
  auto hit = store.get("key-1");
  REQUIRE(hit.has_value());
  CHECK(*hit == "{\"v\":1}");

  // Records are content-addressed files on disk.
  CHECK(fs::exists(store.path_for("key-1")));
  CHECK(store.path_for("key-1") != store.path_for("key-2"));

  // Re-putting the identical payload is a no-op; a differing payload under
  // the same key means a determinism break and must throw.
  CHECK_NOTHROW(store.put("key-1", "{\"v\":1}"));
  CHECK_THROWS_AS(store.put("key-1", "{\"v\":2}"), NumericsError);
}

TEST_CASE("disabled store ignores puts and misses gets") {
  ResultStore store;
  CHECK(!store.enabled());
  CHECK_NOTHROW(store.put("k", "payload"));
  CHECK(!store.get("k").has_value());
}

TEST_CASE("environment override picks the cache directory") {
  TempDir tmp;
  ::setenv("IONSWAP_CACHE_DIR", tmp.str().c_str(), 1);
  ResultStore store = ResultStore::from_config("ignored-by-override");
  CHECK(store.dir() == tmp.str());
  ::unsetenv("IONSWAP_CACHE_DIR");

  ResultStore plain = ResultStore::from_config("from-config");
  CHECK(plain.dir() == "from-config");
  ResultStore off = ResultStore::from_config("");
  CHECK(!off.enabled());
}

TEST_CASE("csv builder emits metadata, header, and quoted cells") {
  const Metadata meta = make_metadata("deadbeef01234567");
  CHECK(meta.tool_version == kToolVersion);
  CHECK(meta.unit_system == kUnitSystem);

  CsvBuilder csv(meta, {"t_us", "note"});
  csv.comment("extra context");
  csv.row({"1.5", "plain"});
  csv.row({"2.5", "with, comma and \"quote\""});
  const std::string text = csv.str();

  CHECK(text.find("# config_hash: deadbeef01234567\r\n") != std::string::npos);
  CHECK(text.find(std::string("# tool_version: ") + kToolVersion + "\r\n") !=
        std::string::npos);
  CHECK(text.find(std::string("# unit_system: ") + kUnitSystem + "\r\n") !=
        std::string::npos);
  CHECK(text.find("# extra context\r\n") != std::string::npos);
  CHECK(text.find("t_us,note\r\n") != std::string::npos);
  CHECK(text.find("1.5,plain\r\n") != std::string::npos);
  CHECK(text.find("2.5,\"with, comma and \"\"quote\"\"\"\r\n") != std::string::npos);

  // Metadata comments precede the column header, which precedes the rows.
  CHECK(text.find("# config_hash") < text.find("t_us,note"));
  CHECK(text.find("t_us,note") < text.find("1.5,plain"));

  // Every line ends CRLF: as many \r as \n.
  size_t cr = 0, lf = 0;
  for (char c : text) {
    if (c == '\r') ++cr;
    if (c == '\n') ++lf;
  }
  CHECK(cr == lf);

  CHECK_THROWS_AS(csv.comment("too late"), ConfigError);
  CHECK_THROWS_AS(csv.row({"only-one-cell"}), ConfigError);
}

TEST_CASE("csv builder with no rows still renders the header") {
  CsvBuilder csv(make_metadata("0"), {"a", "b"});
  const std::string text = csv.str();
  CHECK(text.find("a,b\r\n") != std::string::npos);
}

TEST_CASE("row_values formats doubles at full precision") {
  CsvBuilder csv(make_metadata("00"), {"x"});
  csv.row_values({0.1});
  CHECK(csv.str().find("0.10000000000000001\r\n") != std::string::npos);
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("render_json attaches the metadata block") {
  nlohmann::json doc;
  doc["answer"] = 42;
  const std::string text = render_json(doc, make_metadata("cafe"));
  const nlohmann::json back = nlohmann::json::parse(text);
  CHECK(back["answer"] == 42);
  CHECK(back["metadata"]["config_hash"] == "cafe");
  CHECK(back["metadata"]["tool_version"] == kToolVersion);
  CHECK(back["metadata"]["unit_system"] == kUnitSystem);
  CHECK(text.back() == '\n');
}
