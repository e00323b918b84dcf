#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scalewave/runner.hpp"

using namespace scalewave;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SCALEWAVE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("config file round trip with overrides") {
    const fs::path dir = fs::temp_directory_path() / "sw_cli_cfg";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "run.cfg");
        out << "# comment line\n";
        out << "n 6\n";
        out << "mu 2.5\n";
        out << "epsilon 0.002\n";
        out << "out " << (dir / "a").string() << "\n";
    }
    ExperimentConfig cfg = ExperimentConfig::load_file((dir / "run.cfg").string());
    CHECK(cfg.n == 6);
    CHECK(cfg.mu == doctest::Approx(2.5));
    CHECK(cfg.epsilon == doctest::Approx(0.002));
    CHECK_THROWS_AS(cfg.set("not_a_key", "1"), std::domain_error);

    // snapshot parses back to the same values
    const fs::path snap = dir / "snapshot.cfg";
    {
        std::ofstream out(snap);
        cfg.subcommand = "exponents";
        out << cfg.snapshot();
    }
    ExperimentConfig cfg2 = ExperimentConfig::load_file(snap.string());
    CHECK(cfg2.n == cfg.n);
    CHECK(cfg2.mu == cfg.mu);
    CHECK(cfg2.epsilon == cfg.epsilon);
    CHECK(cfg2.subcommand == "exponents");
}

TEST_CASE("exponents subcommand writes the JSON record") {
    const fs::path dir = fs::temp_directory_path() / "sw_cli_exp";
    fs::remove_all(dir);
    const int rc = run_cli("exponents --n 4 --mu 2 --out " + dir.string() + " --dump-kernels");
    CHECK(rc == 0);
    CHECK(fs::exists(dir / "config.snapshot"));
    const auto j = nlohmann::json::parse(slurp(dir / "exponents.json"));
    CHECK(j["p0_n_plus_mu"].get<double>() == doctest::Approx(1.6433981132).epsilon(1e-8));
    CHECK(j["p_window"][1].get<double>() == doctest::Approx(1.8));
    CHECK(j["M_n"].get<double>() == doctest::Approx(4.3722813233).epsilon(1e-8));
    const auto k = nlohmann::json::parse(slurp(dir / "kernel_terms.json"));
    CHECK(k.size() == 2);  // H_0, H_1 for m = 1
    CHECK(k[1]["terms"].size() == 2);
}

TEST_CASE("invalid configuration exits 1 and names the problem") {
    const fs::path dir = fs::temp_directory_path() / "sw_cli_bad";
    CHECK(run_cli("exponents --n 5 --out " + dir.string()) == 1);
    CHECK(run_cli("frobnicate") != 0);
}

TEST_CASE("propagate-linear with zero data writes an all-zero table") {
    const fs::path dir = fs::temp_directory_path() / "sw_cli_lin0";
    fs::remove_all(dir);
    const int rc = run_cli("propagate-linear --n 4 --mu 2 --epsilon 0 --grid 6 --tmax 4 --out " +
                           dir.string());
    CHECK(rc == 0);
    std::ifstream in(dir / "linear_field.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,r,v0,dr_v0,weight_ratio_value,weight_ratio_deriv");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        std::getline(ls, cell, ',');
        for (int c = 2; c < 6 && std::getline(ls, cell, ','); ++c)
            CHECK(std::abs(std::stod(cell)) == 0.0);
    }
    CHECK(rows == 36);
}

TEST_CASE("determinism: identical config and seed give byte-identical output") {
    const fs::path d1 = fs::temp_directory_path() / "sw_cli_det1";
    const fs::path d2 = fs::temp_directory_path() / "sw_cli_det2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    const std::string args = "propagate-linear --n 4 --mu 2 --grid 5 --tmax 4 --seed 7 --out ";
    CHECK(run_cli(args + d1.string()) == 0);
    CHECK(run_cli(args + d2.string()) == 0);
    CHECK(slurp(d1 / "linear_field.csv") == slurp(d2 / "linear_field.csv"));
}
