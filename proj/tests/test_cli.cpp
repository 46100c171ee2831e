// End-to-end smoke tests of the CLI surface: gen -> match -> metrics ->
// simulate, plus the fixtures subcommand and failure exit codes.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    std::string command = std::string(JOBMATCH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("gen, match, metrics and simulate chain together") {
    TempDir tmp("jobmatch_cli_chain");
    const std::string data = (tmp.path / "data").string();
    REQUIRE(run_cli("gen --spec 12x9 --prefs-per-candidate 4 --seed 3 --out " + data) == 0);
    REQUIRE(fs::exists(tmp.path / "data/preferences.csv"));
    REQUIRE(fs::exists(tmp.path / "data/metadata.json"));

    const std::string matched = (tmp.path / "matched").string();
    REQUIRE(run_cli("match --prefs " + data + "/preferences.csv --algo mixed --rounds 4 --out " +
                    matched) == 0);
    REQUIRE(fs::exists(tmp.path / "matched/matches_normal.csv"));
    REQUIRE(fs::exists(tmp.path / "matched/matches_lmf.csv"));
    REQUIRE(fs::exists(tmp.path / "matched/matches_mixed.csv"));
    REQUIRE(fs::exists(tmp.path / "matched/dense_preferences.csv"));

    const std::string metrics = (tmp.path / "metrics").string();
    CHECK(run_cli("metrics --prefs " + data + "/preferences.csv --matches " + matched +
                  "/matches_mixed.csv --dense " + matched +
                  "/dense_preferences.csv --algo mixed --out " + metrics) == 0);
    CHECK(fs::exists(tmp.path / "metrics/displacement.csv"));
    CHECK(fs::exists(tmp.path / "metrics/withholdings.csv"));
    CHECK(fs::exists(tmp.path / "metrics/retention.csv"));

    const std::string sim = (tmp.path / "sim").string();
    CHECK(run_cli("simulate --mode realworld --prefs " + data + "/preferences.csv --out " + sim) ==
          0);
    CHECK(fs::exists(tmp.path / "sim/vacancy.csv"));
    CHECK(fs::exists(tmp.path / "sim/acceptance_log.csv"));
    CHECK(run_cli("simulate --mode matches --matches " + matched +
                  "/matches_normal.csv --candidates 12 --algo normal --out " + sim) == 0);
}

TEST_CASE("the experiment subcommand honours --spec") {
    TempDir tmp("jobmatch_cli_experiment");
    CHECK(run_cli("experiment --spec 6x6 --seed 2 --out " + tmp.path.string()) == 0);
    CHECK(fs::exists(tmp.path / "6x6/displacement.csv"));
    CHECK(fs::exists(tmp.path / "6x6/runtimes.csv"));
}

TEST_CASE("the fixtures subcommand succeeds") {
    CHECK(run_cli("fixtures") == 0);
}

TEST_CASE("bad invocations exit nonzero") {
    CHECK(run_cli("") != 0);
    CHECK(run_cli("match --prefs /nonexistent.csv --algo normal") != 0);
    CHECK(run_cli("match --prefs /nonexistent.csv --algo bogus") != 0);
    CHECK(run_cli("simulate --mode bogus") != 0);
}
