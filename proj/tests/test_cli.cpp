#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fresco/runner.hpp"
#include "fresco/twophoton.hpp"

using namespace fresco;
using namespace fresco::cli;

namespace {

std::string fixtures_dir() {
    namespace fs = std::filesystem;
    for (const char* candidate : {"fixtures", "../fixtures", "../../fixtures"})
        if (fs::exists(fs::path(candidate) / "fig2f.cfg")) return candidate;
    return "fixtures";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("parse fig2f fixture") {
    RunConfig c = parse_config(Command::G2Map, fixtures_dir() + "/fig2f.cfg", {});
    CHECK(c.model == ModelKind::RF);
    CHECK(c.rf.delta_sigma == 80.0);
    CHECK(c.rf.omega_sigma == 2.0);
    CHECK(c.rf.gamma_sigma == 1.0);
    CHECK(c.filter_gamma == 2.0);
}

TEST_CASE("parse fig3a fixture") {
    RunConfig c = parse_config(Command::G2Map, fixtures_dir() + "/fig3a.cfg", {});
    CHECK(c.model == ModelKind::Cavity);
    CHECK(c.cavity.gamma_a == 1.0);
    CHECK(c.cavity.delta_a == 80.1);
    CHECK(c.cavity.lambda == 0.001);
    CHECK(c.cavity.n_max == 15);
}

TEST_CASE("defaults: 101-point varpi grid over [-2.5, 2.5]") {
    RunConfig c = parse_config(Command::G2Map, std::nullopt, {"model=rf", "omega_sigma=1"});
    CHECK(c.grid1.min == -2.5);
    CHECK(c.grid1.max == 2.5);
    CHECK(c.grid1.count == 101);
    CHECK(c.grid2.count == 101);
    CHECK(!c.grid_in_omega);
}

TEST_CASE("config errors carry location and key information") {
    CHECK_THROWS_WITH_AS(
        (void)parse_config(Command::Spectrum, std::nullopt, {"nonsense_key=1"}),
        doctest::Contains("nonsense_key"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config(Command::Spectrum, std::nullopt, {"omega_sigma=abc"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)parse_config(Command::Spectrum, std::nullopt, {"model=cavity", "lambda=1.5"}),
        std::invalid_argument);
    CHECK_THROWS_AS((void)parse_config(Command::Spectrum, std::string("/no/such/file.cfg"), {}),
                    std::invalid_argument);
}

TEST_CASE("grid spec parsing") {
    GridSpec g = parse_grid_spec("-1.5:1.5:7");
    CHECK(g.min == -1.5);
    CHECK(g.max == 1.5);
    CHECK(g.count == 7);
    CHECK(g.values().size() == 7);
    CHECK(g.values().front() == -1.5);
    CHECK(g.values().back() == 1.5);
    CHECK_THROWS_AS((void)parse_grid_spec("1:2"), std::invalid_argument);
}

TEST_CASE("runs are deterministic across worker counts") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fresco_cli_test";
    fs::create_directories(dir);

    RunConfig c = parse_config(Command::G2Map, fixtures_dir() + "/fig2f.cfg", {});
    c.grid1 = {-1.8, 1.8, 7};
    c.grid2 = c.grid1;
    c.workers = 1;
    c.out_path = (dir / "a.csv").string();
    REQUIRE(run(c) == kExitOk);
    c.workers = 3;
    c.out_path = (dir / "b.csv").string();
    REQUIRE(run(c) == kExitOk);
    CHECK(slurp((dir / "a.csv").string()) == slurp((dir / "b.csv").string()));

    // sidecar metadata written next to the CSV
    CHECK(fs::exists(dir / "a.csv.json"));
    fs::remove_all(dir);
}

TEST_CASE("g2tau run reproduces the filtered Heitler curve") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fresco_cli_tau";
    fs::create_directories(dir);

    RunConfig c = parse_config(Command::G2Tau, fixtures_dir() + "/heitler_tau.cfg", {});
    c.tau_count = 21;
    c.out_path = (dir / "tau.csv").string();
    REQUIRE(run(c) == kExitOk);

    std::ifstream in(c.out_path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "tau,g2");
    double tau, g2;
    char comma;
    int rows = 0;
    while (in >> tau >> comma >> g2) {
        const double ref = twophoton::g2_filtered_heitler(2.0, 1.0, tau);
        CHECK(std::abs(g2 - ref) < 1e-4);
        ++rows;
    }
    CHECK(rows == 21);
    fs::remove_all(dir);
}

TEST_CASE("failed writes leave no partial output") {
    RunConfig c = parse_config(Command::Spectrum, std::nullopt,
                               {"model=rf", "omega_sigma=0.5", "grid1=-1:1:3"});
    c.out_path = "/nonexistent_dir_fresco/out.csv";
    CHECK(run(c) == kExitNumerical);
    CHECK(!std::filesystem::exists(c.out_path));
}

TEST_CASE("spectrum run writes the documented CSV header") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fresco_cli_spec";
    fs::create_directories(dir);
    RunConfig c = parse_config(Command::Spectrum, fixtures_dir() + "/fig2a.cfg", {});
    c.grid1 = {-2.0, 2.0, 9};
    c.out_path = (dir / "s.csv").string();
    REQUIRE(run(c) == kExitOk);
    std::string content = slurp(c.out_path);
    CHECK(content.substr(0, 14) == "varpi,omega,S\n");
    fs::remove_all(dir);
}
