// Binary interface exercised exactly as an external client would: through the
// shared library header only, no core internals.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <ionswap.h>

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ionswap_capi_" + std::to_string(::getpid()) + "_" +
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

// Takes ownership of a library string and frees it on scope exit.
struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ionswap_string_free(s); }
  std::string view() const { return s ? std::string(s) : std::string(); }
};

struct OwnedRun {
  ionswap_run* run = nullptr;
  ~OwnedRun() { ionswap_run_free(run); }
};

}  // namespace

TEST_CASE("version string") {
  CHECK(std::string(ionswap_version()) == "1.0.0");
}

TEST_CASE("run construction and config round trip") {
  OwnedRun def;
  REQUIRE(ionswap_run_new(nullptr, &def.run) == IONSWAP_OK);
  REQUIRE(def.run != nullptr);

  OwnedString text;
  REQUIRE(ionswap_run_config_text(def.run, &text.s) == IONSWAP_OK);
  const std::string rendered = text.view();
  CHECK(rendered.find("beta_max = ") != std::string::npos);
  CHECK(rendered.find("N/m^3") != std::string::npos);
  CHECK(rendered.find("amu") != std::string::npos);

  // The canonical render parses back.
  OwnedRun back;
  CHECK(ionswap_run_new(rendered.c_str(), &back.run) == IONSWAP_OK);
}

TEST_CASE("bad configuration reports through last_error") {
  ionswap_run* run = reinterpret_cast<ionswap_run*>(0x1);
  const int rc = ionswap_run_new("t_f = 30 parsec\n", &run);
  CHECK(rc == IONSWAP_ERR_CONFIG);
  CHECK(run == nullptr);  // cleared on failure
  CHECK(std::string(ionswap_last_error()).find("parsec") != std::string::npos);

  CHECK(ionswap_run_new("nonsense line\n", &run) == IONSWAP_ERR_CONFIG);
  CHECK(ionswap_run_new(nullptr, nullptr) == IONSWAP_ERR_CONFIG);
}

TEST_CASE("infeasible constraints map to their own status") {
  OwnedRun run;
  REQUIRE(ionswap_run_new("d_in = 0.9 d_c\n", &run.run) == IONSWAP_OK);
  OwnedString doc;
  CHECK(ionswap_design_json(run.run, &doc.s) == IONSWAP_ERR_INFEASIBLE);
}

TEST_CASE("design document") {
  OwnedRun run;
  REQUIRE(ionswap_run_new(nullptr, &run.run) == IONSWAP_OK);
  OwnedString doc;
  REQUIRE(ionswap_design_json(run.run, &doc.s) == IONSWAP_OK);
  const std::string json = doc.view();
  CHECK(json.find("\"d_c_um\"") != std::string::npos);
  CHECK(json.find("\"omega0_over_2pi_MHz\"") != std::string::npos);
  CHECK(json.find("\"exchange_time_us\"") != std::string::npos);
}

TEST_CASE("optimize, excitations, and protocol sampling") {
  OwnedRun run;
  REQUIRE(ionswap_run_new("cost = exact_nonrobust\ntwo_param = false\n",
                          &run.run) == IONSWAP_OK);

  double A = 0, B = -1, cost = -1;
  REQUIRE(ionswap_optimize(run.run, 30.0, &A, &B, &cost) == IONSWAP_OK);
  CHECK(B == 0.0);  // one free parameter
  CHECK(cost >= 0.0);
  CHECK(cost < 1e-3);
  CHECK(std::isfinite(A));

  double e1 = -1, e2 = -1;
  REQUIRE(ionswap_excitations(run.run, A, B, 30.0, 0.0, &e1, &e2) == IONSWAP_OK);
  CHECK(std::isfinite(e1));
  CHECK(std::isfinite(e2));
  CHECK(e1 < 1e-3);
  CHECK(e2 < 1e-3);

  OwnedString proto;
  REQUIRE(ionswap_protocol_json(run.run, A, B, 30.0, 11, &proto.s) == IONSWAP_OK);
  CHECK(proto.view().find("\"samples\": 11") != std::string::npos);

  OwnedString bad;
  CHECK(ionswap_protocol_json(run.run, A, B, 30.0, 1, &bad.s) == IONSWAP_ERR_CONFIG);
  CHECK(std::string(ionswap_last_error()).find("samples") != std::string::npos);

  // Null output pointers are allowed everywhere.
  CHECK(ionswap_optimize(run.run, 30.0, nullptr, nullptr, nullptr) == IONSWAP_OK);
}

TEST_CASE("batch command writes files and returns the summary") {
  TempDir out;
  const std::string config = "out_dir = " + out.str() + "\n";
  OwnedRun run;
  REQUIRE(ionswap_run_new(config.c_str(), &run.run) == IONSWAP_OK);

  OwnedString summary;
  REQUIRE(ionswap_command(run.run, "design", &summary.s) == IONSWAP_OK);
  CHECK(summary.view().find("\"command\": \"design\"") != std::string::npos);
  CHECK(fs::exists(out.path / "design.json"));

  CHECK(ionswap_command(run.run, "bogus", nullptr) == IONSWAP_ERR_CONFIG);
  CHECK(std::string(ionswap_last_error()).find("bogus") != std::string::npos);
}
