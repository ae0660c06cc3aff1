#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "qadis/io.hpp"
#include "qadis/sweep.hpp"
#include "test_support.hpp"

using namespace qadis;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("qadis_sweep_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("config parsing with defaults") {
    TempDir dir;
    const auto path = dir.path / "sweep.json";
    {
        std::ofstream out(path);
        out << R"({"reference_alpha": 1.0, "alpha_grid": [0.1, 4.0],
                   "disorder_grid": [[0.05, 0.035]],
                   "realizations": 500, "master_seed": 3})";
    }
    const auto config = load_sweep_config(path);
    CHECK(config.problem.n() == 14);
    CHECK(config.alpha_grid == std::vector<double>{0.1, 4.0});
    CHECK(config.realizations == 500);
    CHECK(config.master_seed == 3);
    CHECK_FALSE(config.quantize);
    CHECK_FALSE(config.dynamics.has_value());
}

TEST_CASE("config validation errors") {
    TempDir dir;
    const auto path = dir.path / "sweep.json";
    auto write = [&](const std::string& text) {
        std::ofstream out(path);
        out << text;
    };
    write(R"({"alpha_grid": [1.0]})");
    CHECK_THROWS_AS(load_sweep_config(path), DataError);
    write(R"({"reference_alpha": 1.0, "alpha_grid": [-1.0]})");
    CHECK_THROWS_AS(load_sweep_config(path), DataError);
    write(R"({"reference_alpha": 1.0, "realizations": 0})");
    CHECK_THROWS_AS(load_sweep_config(path), DataError);
}

TEST_CASE("single zero-disorder cell reports ground probability 1 and no beta") {
    TempDir dir;
    SweepConfig config;
    config.problem = reference_problem(1.0);
    config.alpha_grid = {4.0};
    config.disorder_grid = {{0.0, 0.0}};
    config.realizations = 50;
    config.master_seed = 1;
    config.out_dir = dir.path / "out";
    const auto report = run_sweep(config);
    CHECK(report.ok);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].ok);
    CHECK(report.cells[0].ground_probability == 1.0);
    CHECK_FALSE(report.cells[0].beta.has_value());

    const std::string manifest = read_file(report.manifest_path);
    CHECK(manifest.find("\"beta_unfittable\": true") != std::string::npos);
    const std::string summary = read_file(config.out_dir / "summary.csv");
    CHECK(summary.find(",1,") != std::string::npos);  // unfittable flag column
}

TEST_CASE("reruns are byte-identical across worker counts") {
    TempDir dir;
    SweepConfig config;
    config.problem = reference_problem(1.0);
    config.alpha_grid = {0.1, 1.0};
    config.disorder_grid = {{0.05, 0.035}};
    config.realizations = 2000;
    config.master_seed = 123;

    config.out_dir = dir.path / "serial";
    config.workers = 1;
    const auto serial = run_sweep(config);
    config.out_dir = dir.path / "parallel";
    config.workers = 4;
    const auto parallel = run_sweep(config);
    CHECK(serial.ok);
    CHECK(parallel.ok);

    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dir.path / "serial")) {
        const auto other = dir.path / "parallel" / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(read_file(entry.path()) == read_file(other));
        ++compared;
    }
    CHECK(compared >= 10);  // manifest, summary, 2 spectra, 2x(dist+levels+hist+fit)
}

TEST_CASE("manifest lists every produced file") {
    TempDir dir;
    SweepConfig config;
    config.problem = reference_problem(1.0);
    config.alpha_grid = {0.5};
    config.disorder_grid = {{0.05, 0.035}};
    config.realizations = 300;
    config.master_seed = 5;
    config.out_dir = dir.path / "out";
    config.dynamics = SweepConfig::Dynamics{{30.0}, 6.283185307179586, 1e-6};
    const auto report = run_sweep(config);
    CHECK(report.ok);
    const std::string manifest = read_file(report.manifest_path);
    for (const auto& entry : fs::directory_iterator(config.out_dir)) {
        const std::string name = entry.path().filename().string();
        if (name == "manifest.json") continue;
        CHECK(manifest.find("\"" + name + "\"") != std::string::npos);
    }
}

TEST_CASE("failed cells are recorded and the sweep continues") {
    TempDir dir;
    SweepConfig config;
    config.problem = test::random_problem(1, 15);  // active_count 15 > statevector cap
    config.alpha_grid = {1.0};
    config.disorder_grid = {{0.01, 0.01}};
    config.realizations = 50;
    config.out_dir = dir.path / "out";
    config.dynamics = SweepConfig::Dynamics{{10.0}, 6.283185307179586, 1e-6};
    const auto report = run_sweep(config);
    // the ensemble cell succeeds, the 15-qubit anneal cell fails
    CHECK_FALSE(report.ok);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].ok);
    const std::string manifest = read_file(report.manifest_path);
    CHECK(manifest.find("error: ") != std::string::npos);
    CHECK(manifest.find("\"status\": \"failed\"") != std::string::npos);
}

TEST_CASE("compare reports zero divergence against itself and both fits") {
    const auto p = reference_problem(0.1);
    const auto spec = enumerate_spectrum(p);
    const auto dist =
        run_disorder_ensemble(p, DisorderParams(0.05, 0.035), 20000, 17);
    const auto self = compare(dist, dist, p, spec);
    CHECK(self.jsd == doctest::Approx(0.0));
    CHECK(self.fit_a.has_value());
    CHECK(self.fit_b.has_value());
    CHECK(self.fit_a->beta == doctest::Approx(self.fit_b->beta));

    const std::string text = render_compare_report(self);
    CHECK(text.find("JSD: 0.0000%") != std::string::npos);
    CHECK(text.find("beta_a:") != std::string::npos);

    // disjoint single-level distributions diverge maximally
    OutputDistribution a;
    a.n = p.n();
    a.total = 10;
    a.counts[spec.levels[0].representatives[0].bits] = 10;
    OutputDistribution b;
    b.n = p.n();
    b.total = 10;
    b.counts[spec.levels[1].representatives[0].bits] = 10;
    const auto disjoint = compare(a, b, p, spec);
    CHECK(disjoint.jsd == doctest::Approx(1.0));
    CHECK_FALSE(disjoint.fit_a.has_value());  // single level is unfittable
    const std::string text2 = render_compare_report(disjoint);
    CHECK(text2.find("JSD: 100.0000%") != std::string::npos);
    CHECK(text2.find("beta_a: unfittable") != std::string::npos);
}

}  // TEST_SUITE
