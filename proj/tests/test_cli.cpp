#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "ym/cli.hpp"
#include "ym/closedform.hpp"
#include "ym/io.hpp"

using namespace ym;
namespace fs = std::filesystem;

namespace {

std::string tmpdir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("ym_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

int run_cli(std::initializer_list<std::string> args) {
    return run(std::vector<std::string>(args));
}

nlohmann::json load_json(const std::string& path) {
    return nlohmann::json::parse(read_text_file(path));
}

}  // namespace

TEST_CASE("classify subcommand writes the verdict and a manifest") {
    const std::string dir = tmpdir("classify_point");
    CHECK(run_cli({"classify", "--v0", "0.5", "--vt0", "0", "--out", dir, "--quiet"}) == 0);
    auto j = load_json(dir + "/classify.json");
    CHECK(j["class"] == "periodic");
    CHECK(j["M"].get<double>() == 0.5);
    CHECK(j["c"].get<double>() == -0.5625);

    auto m = load_json(dir + "/manifest.json");
    CHECK(m["subcommand"] == "classify");
    CHECK(m["seed"].is_null());
    CHECK(!m["output_paths"].empty());
}

TEST_CASE("soliton samples round-trip through classify") {
    const std::string dir = tmpdir("soliton_roundtrip");
    CHECK(run_cli({"soliton", "--a", "2", "--t-min", "-6.4", "--t-max", "7.8", "--n", "1421",
                   "--radial", "--out", dir, "--quiet"}) == 0);
    RadialProfile p = profile_from_csv(read_text_file(dir + "/soliton.csv"));
    for (std::size_t i = 0; i < p.r.size(); ++i) {
        CHECK(std::abs(p.u[i] - soliton_value({2.0, 1}, p.r[i])) <= 2e-14);
    }
    CHECK(run_cli({"classify", "--profile", dir + "/soliton.csv", "--out", dir, "--quiet"}) == 0);
    auto j = load_json(dir + "/classify.json");
    CHECK(j["class"] == "soliton");
    CHECK(j["a"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(j["sign"].get<int>() == 1);
}

TEST_CASE("period subcommand tabulates a grid with both methods") {
    const std::string dir = tmpdir("period_grid");
    CHECK(run_cli({"period", "--m-grid", "0.1:0.9:0.1", "--out", dir, "--quiet"}) == 0);
    const std::string csv = read_text_file(dir + "/period.csv");
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 10);  // header + 9 amplitudes
    // the disagreement column stays at rounding level
    std::size_t pos = csv.find('\n') + 1;
    while (pos < csv.size()) {
        const std::size_t last_comma = csv.find_last_of(',', csv.find('\n', pos));
        const double err = std::strtod(csv.c_str() + last_comma + 1, nullptr);
        CHECK(err < 1e-10);
        pos = csv.find('\n', pos) + 1;
    }
}

TEST_CASE("energy subcommand reports the finite whole-line value") {
    const std::string dir = tmpdir("energy_default");
    CHECK(run_cli({"energy", "--a", "1", "--out", dir, "--quiet"}) == 0);
    auto j = load_json(dir + "/energy.json");
    CHECK(j["finite"].get<bool>());
    CHECK(j["value"].get<double>() == doctest::Approx(16.755160819145562).epsilon(1e-6));
}

TEST_CASE("orbit subcommand maps escape onto exit code 2") {
    const std::string dir = tmpdir("orbit_escape");
    CHECK(run_cli({"orbit", "--v0", "2", "--vt0", "0", "--t0", "0", "--t1", "5", "--out", dir,
                   "--quiet"}) == 2);
    auto j = load_json(dir + "/orbit_events.json");  // files are still written
    CHECK(j["escaped"].get<bool>());

    const std::string dir2 = tmpdir("orbit_bounded");
    CHECK(run_cli({"orbit", "--v0", "0.5", "--vt0", "0", "--out", dir2, "--quiet"}) == 0);
    auto j2 = load_json(dir2 + "/orbit_events.json");
    CHECK(!j2["escaped"].get<bool>());
}

TEST_CASE("relax runs are byte-reproducible") {
    const std::string a = tmpdir("relax_a");
    const std::string b = tmpdir("relax_b");
    for (const std::string& dir : {a, b}) {
        CHECK(run_cli({"relax", "--init", "random:0.3:5", "--t-min", "-1", "--t-max", "1",
                       "--nt", "33", "--ntheta", "8", "--tol", "1e-7", "--out", dir,
                       "--quiet"}) == 0);
    }
    CHECK(read_text_file(a + "/relax_field.csv") == read_text_file(b + "/relax_field.csv"));
    CHECK(read_text_file(a + "/relax_report.json") == read_text_file(b + "/relax_report.json"));
    auto m = load_json(a + "/manifest.json");
    CHECK(m["seed"].get<long>() == 5);
}

TEST_CASE("relax that runs out of steps exits 2") {
    const std::string dir = tmpdir("relax_unconverged");
    CHECK(run_cli({"relax", "--init", "perturbed-soliton:1:0.1", "--max-steps", "3", "--out",
                   dir, "--quiet"}) == 2);
    auto j = load_json(dir + "/relax_report.json");
    CHECK(!j["converged"].get<bool>());
    CHECK(j["steps"].get<long>() == 3);
}

TEST_CASE("usage errors exit with 64") {
    CHECK(run_cli({"frobnicate"}) == 64);
    CHECK(run_cli({}) == 64);
    CHECK(run_cli({"classify"}) != 0);  // neither point nor profile given
}

TEST_CASE("check subcommand lists and filters") {
    CHECK(run_cli({"check", "--list"}) == 0);
    CHECK(run_cli({"check", "--only", "no-such-check-zzz"}) == 1);
}
