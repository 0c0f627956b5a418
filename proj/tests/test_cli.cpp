#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "burgers1d/cli.hpp"

namespace fs = std::filesystem;
using namespace burgers1d;
using cli::Command;
using cli::OutFormat;
using cli::RunConfig;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("burgers1d_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("parse_args: profile with defaults filled") {
    const RunConfig cfg = cli::parse_args({"profile", "--alpha", "1", "--epsilon", "0.1"});
    CHECK(cfg.command == Command::profile);
    CHECK(cfg.alpha == 1.0);
    CHECK(cfg.eps == std::vector<double>{0.1});
    CHECK(cfg.k == 0.0);
    CHECK(cfg.nu == 1e-3);
    CHECK(cfg.m == 4);
    CHECK(cfg.n == 0);  // auto
    CHECK(cfg.format == OutFormat::csv);
    CHECK(cfg.resolved_out_path() == "profile.csv");
    CHECK(cfg.resolve_n(0.1) == 401);
}

TEST_CASE("parse_args: rejects out-of-range values") {
    CHECK_THROWS_AS(cli::parse_args({"spectrum", "--epsilon", "-0.1"}), ConfigError);
    CHECK_THROWS_AS(cli::parse_args({"spectrum", "--epsilon", "0"}), ConfigError);
    CHECK_THROWS_AS(cli::parse_args({"profile", "--n", "2"}), ConfigError);
    CHECK_THROWS_AS(cli::parse_args({"profile", "--n", "abc"}), ConfigError);
    CHECK_THROWS_AS(cli::parse_args({"evolve", "--dt", "-0.1"}), ConfigError);
    CHECK_THROWS_AS(cli::parse_args({"nonsense"}), ConfigError);
    CHECK_THROWS_AS(cli::parse_args({"profile", "--bogus-flag", "1"}), ConfigError);
    CHECK_THROWS_AS(cli::parse_args({}), ConfigError);
}

TEST_CASE("parse_args: sweep accepts an eps list") {
    const RunConfig cfg =
        cli::parse_args({"sweep", "--epsilons", "0.3,0.2,0.1", "--m", "2"});
    CHECK(cfg.command == Command::sweep);
    CHECK(cfg.eps == std::vector<double>{0.3, 0.2, 0.1});
    CHECK(cfg.m == 2);
    CHECK(cfg.resolved_out_path() == "sweep.csv");
}

TEST_CASE("parse_args: help is surfaced, not an error") {
    CHECK_THROWS_AS(cli::parse_args({"--help"}), cli::HelpRequested);
}

TEST_CASE("parse_args: BURGERS_JOBS overrides --jobs") {
    ::setenv("BURGERS_JOBS", "3", 1);
    const RunConfig cfg = cli::parse_args({"sweep", "--epsilons", "0.3,0.2", "--jobs", "7"});
    ::unsetenv("BURGERS_JOBS");
    CHECK(cfg.jobs == 3);
}

TEST_CASE("run: profile CSV artifact and meta sidecar") {
    TempDir tmp;
    RunConfig cfg = cli::parse_args({"profile", "--alpha", "1", "--epsilon", "0.1", "--n", "101"});
    cfg.out_path = (tmp.path / "profile.csv").string();
    CHECK(cli::run(cfg) == 0);

    const std::string content = slurp(cfg.out_path);
    CHECK(content.rfind("x,U,Ux,Uxx,residual\n", 0) == 0);
    CHECK(count_lines(content) == 102);  // header + n rows

    const auto meta = nlohmann::json::parse(slurp(cfg.out_path + ".meta.json"));
    CHECK(meta["config"]["command"] == "profile");
    CHECK(meta["artifact_version"] == "0.1.0");
}

TEST_CASE("run: identical configs produce byte-identical artifacts") {
    TempDir tmp;
    RunConfig a = cli::parse_args({"spectrum", "--epsilon", "0.25", "--m", "3", "--n", "401"});
    a.out_path = (tmp.path / "s1.csv").string();
    RunConfig b = a;
    b.out_path = (tmp.path / "s2.csv").string();
    CHECK(cli::run(a) == 0);
    CHECK(cli::run(b) == 0);
    CHECK(slurp(a.out_path) == slurp(b.out_path));
}

TEST_CASE("run: steady CSV schema") {
    TempDir tmp;
    RunConfig cfg = cli::parse_args({"steady", "--epsilon", "0.25", "--n", "201"});
    cfg.out_path = (tmp.path / "steady.csv").string();
    CHECK(cli::run(cfg) == 0);
    CHECK(slurp(cfg.out_path).rfind("x,u_newton,U_composite,diff\n", 0) == 0);
}

TEST_CASE("run: evolve CSV schema and decay") {
    TempDir tmp;
    RunConfig cfg = cli::parse_args({"evolve", "--epsilon", "0.3", "--n", "201", "--t-end", "4.0"});
    cfg.out_path = (tmp.path / "evolve.csv").string();
    CHECK(cli::run(cfg) == 0);
    const std::string content = slurp(cfg.out_path);
    CHECK(content.rfind("t,deviation\n", 0) == 0);
    CHECK(count_lines(content) >= 10);

    // first sample is ||nu phi|| = nu; deviations shrink from there
    std::istringstream is(content);
    std::string line;
    std::getline(is, line);  // header
    std::getline(is, line);
    const double first = std::stod(line.substr(line.find(',') + 1));
    CHECK(first == doctest::Approx(1e-3).epsilon(1e-6));
    std::string last;
    while (std::getline(is, line))
        if (!line.empty()) last = line;
    const double final_dev = std::stod(last.substr(last.find(',') + 1));
    CHECK(final_dev < 0.5 * first);
}

TEST_CASE("run: sweep CSV schema tracks m") {
    TempDir tmp;
    RunConfig cfg = cli::parse_args({"sweep", "--epsilons", "0.3,0.25,0.2", "--m", "2"});
    cfg.out_path = (tmp.path / "sweep.csv").string();
    CHECK(cli::run(cfg) == 0);
    const std::string content = slurp(cfg.out_path);
    CHECK(content.rfind("eps,lambda1,lambda2\n", 0) == 0);
    CHECK(count_lines(content) == 4);
}

TEST_CASE("run: spectrum below the precision floor fails with exit 1") {
    TempDir tmp;
    RunConfig cfg = cli::parse_args({"spectrum", "--epsilon", "0.01"});
    cfg.out_path = (tmp.path / "never.csv").string();
    CHECK(cli::run(cfg) == 1);
    CHECK_FALSE(fs::exists(cfg.out_path));
}

TEST_CASE("run: report bundle carries the acceptance ledger") {
    TempDir tmp;
    RunConfig cfg = cli::parse_args({"report", "--alpha", "1", "--epsilon", "0.25"});
    cfg.out_path = (tmp.path / "report.json").string();
    CHECK(cli::run(cfg) == 0);

    const auto bundle = nlohmann::json::parse(slurp(cfg.out_path));
    const auto& ledger = bundle["ledger"];
    const std::vector<std::string> keys = {
        "stationary_residual", "l2_bound",           "boundary_compatibility",
        "newton_vs_composite", "eigensolver_oracle", "similarity_invariance",
        "exp_small_eigenvalue", "decay_vs_eigenvalue", "linearization_validity",
        "boundedness",          "determinism"};
    for (const auto& key : keys) {
        REQUIRE(ledger.contains(key));
        const std::string v = ledger[key];
        const bool valid = v == "pass" || v == "fail" || v.rfind("skipped(", 0) == 0;
        CHECK(valid);
    }
    CHECK(ledger["stationary_residual"] == "pass");
    CHECK(ledger["decay_vs_eigenvalue"] == "pass");
    CHECK(std::string(ledger["similarity_invariance"]).rfind("skipped(", 0) == 0);
}

TEST_CASE("parse_args: report refuses csv") {
    CHECK_THROWS_AS(cli::parse_args({"report", "--format", "csv"}), ConfigError);
}
