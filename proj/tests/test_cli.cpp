#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

#include "plexp/config.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(PLEXP_CLI) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(std::string p) : path(std::move(p)) { fs::remove_all(path); }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("a run restarted from its own resolved config reproduces the bytes") {
    TempDir d1("test_cli_rt1"), d2("test_cli_rt2");
    const std::string cfg = std::string(PLEXP_CONFIG_DIR) + "/slow_gaussian.json";
    REQUIRE(run("--config " + cfg + " --out " + d1.path.string()) == 0);
    REQUIRE(run("--config " + (d1.path / "resolved_config.json").string() + " --out " +
                d2.path.string()) == 0);
    CHECK(slurp(d1.path / "slow.csv") == slurp(d2.path / "slow.csv"));

    // The echo itself is a fixed point of parse + resolve.
    const std::string echo = slurp(d1.path / "resolved_config.json");
    CHECK(plexp::parse_config(echo).resolved_json() == echo);
}

TEST_CASE("exit codes distinguish success, bad input and usage errors") {
    TempDir dir("test_cli_codes");
    CHECK(run("verify --seed 5 --out " + dir.path.string()) == 0);
    CHECK(run("") != 0);               // nothing to do
    CHECK(run("--config missing.json") != 0);
    CHECK(run("figures --out " + dir.path.string()) != 0); // figure mode needs a config
    CHECK(run("--figure 9 verify") != 0);                  // out of range
}

TEST_CASE("subcommands override the configured scenario") {
    TempDir dir("test_cli_override");
    const std::string cfg = std::string(PLEXP_CONFIG_DIR) + "/slow_gaussian.json";
    // Same config, but the profiles subcommand wins over scenario = slow.
    REQUIRE(run("profiles --config " + cfg + " --out " + dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "profiles.csv"));
    CHECK(!fs::exists(dir.path / "slow.csv"));
    const std::string echo = slurp(dir.path / "resolved_config.json");
    CHECK(echo.find("\"scenario\": \"profiles\"") != std::string::npos);
}
