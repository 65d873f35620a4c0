#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "cascadelab/cli.hpp"

using namespace cascadelab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("cascadelab_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json manifest_of(const fs::path& dir) {
    json j;
    std::ifstream in(dir / "manifest.json");
    REQUIRE(in.good());
    in >> j;
    return j;
}

const json* claim_by_id(const json& manifest, const std::string& id) {
    for (const auto& c : manifest["claims"])
        if (c["id"] == id) return &c;
    return nullptr;
}

int run(std::initializer_list<std::string> args) { return cli::run_cli(std::vector<std::string>(args)); }

} // namespace

TEST_CASE("shell-steady writes data, manifest and consistent claims") {
    const auto dir = fresh_dir("steady");
    const int rc = run({"shell-steady", "--lambda", "2", "--shells", "25", "--e0", "1", "--out",
                        dir.string()});
    REQUIRE(rc == 0);
    CHECK(fs::exists(dir / "steady.csv"));
    const auto m = manifest_of(dir);
    CHECK(m["status"] == "ok");
    CHECK(m["outputs"][0]["rows"] == 25);
    const auto* slope = claim_by_id(m, "k41_steady_slope");
    REQUIRE(slope != nullptr);
    CHECK((*slope)["verdict"] == "consistent");
    CHECK(std::abs((*slope)["measured"].get<double>() + 5.0 / 3.0) < 1e-12);
    const auto* flux = claim_by_id(m, "k41_flux_constancy");
    REQUIRE(flux != nullptr);
    CHECK((*flux)["verdict"] == "consistent");

    // header + 25 rows
    std::istringstream csv(slurp(dir / "steady.csv"));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 26);
}

TEST_CASE("identical configs give byte-identical data files") {
    const auto d1 = fresh_dir("det1");
    const auto d2 = fresh_dir("det2");
    const std::vector<std::string> base = {"shell-sim", "--lambda", "2",  "--shells", "12",
                                           "--nu",      "1e-5",     "--rhs", "viscous", "--t-end",
                                           "0.6",       "--ic",     "steady"};
    for (const auto& dir : {d1, d2}) {
        auto args = base;
        args.push_back("--out");
        args.push_back(dir.string());
        REQUIRE(cli::run_cli(args) == 0);
    }
    CHECK(slurp(d1 / "series.csv") == slurp(d2 / "series.csv"));
}

TEST_CASE("fit-slope round trip through CSV") {
    const auto dir = fresh_dir("fit");
    const fs::path input = dir / "spectrum.csv";
    {
        std::ofstream out(input);
        out << std::setprecision(17) << "k,E\n";
        for (int i = 0; i < 12; ++i) {
            const double k = std::pow(2.0, i * 0.5);
            out << k << "," << std::pow(k, -5.0 / 3.0) << "\n";
        }
    }
    const auto out = fresh_dir("fit_out");
    REQUIRE(run({"fit-slope", "--input", input.string(), "--kmin", "1", "--kmax", "100", "--out",
                 out.string()}) == 0);
    const auto m = manifest_of(out);
    CHECK(std::abs(m["derived"]["slope"].get<double>() + 5.0 / 3.0) < 1e-9);
    CHECK(fs::exists(out / "fit.csv"));
}

TEST_CASE("spectrum-integrals on a k^(-5/3) table") {
    const auto dir = fresh_dir("ints");
    const fs::path input = dir / "spectrum.csv";
    {
        std::ofstream out(input);
        out << std::setprecision(17) << "k,E\n";
        const int n = 40000;
        for (int i = 0; i <= n; ++i) {
            const double k = 1.0 + 63.0 * static_cast<double>(i) / n;
            out << k << "," << std::pow(k, -5.0 / 3.0) << "\n";
        }
    }
    const auto out = fresh_dir("ints_out");
    REQUIRE(run({"spectrum-integrals", "--input", input.string(), "--nu", "0", "--out",
                 out.string()}) == 0);
    const auto m = manifest_of(out);
    CHECK(std::abs(m["derived"]["k_total"].get<double>() - 1.40625) < 1e-6);
    CHECK(m["derived"]["eps_total"].get<double>() == 0.0);
}

TEST_CASE("exit codes") {
    SUBCASE("unknown subcommand is a usage error") {
        CHECK(run({"no-such-thing"}) == cli::kExitConfig);
    }
    SUBCASE("unknown flag is a usage error") {
        CHECK(run({"shell-steady", "--frobnicate", "1", "--out", "/tmp/x"}) == cli::kExitConfig);
    }
    SUBCASE("missing --out is a usage error") {
        CHECK(run({"shell-steady", "--lambda", "2"}) == cli::kExitConfig);
    }
    SUBCASE("invalid physics parameters exit 2 and record the error in the manifest") {
        const auto dir = fresh_dir("badparam");
        CHECK(run({"keps-decay", "--eps0", "0", "--out", dir.string()}) == cli::kExitConfig);
        const auto m = manifest_of(dir);
        CHECK(m["status"] == "error");
        CHECK(m["error"].get<std::string>().find("must be > 0") != std::string::npos);
        // no partial numeric outputs
        CHECK(!fs::exists(dir / "decay.csv"));
    }
    SUBCASE("unknown config key is a usage error") {
        const auto dir = fresh_dir("badkey");
        const fs::path cfgfile = dir / "cfg.json";
        std::ofstream(cfgfile) << R"({"lambda": 2.0, "lamda": 3.0})";
        CHECK(run({"shell-steady", "--config", cfgfile.string(), "--out", dir.string()}) ==
              cli::kExitConfig);
    }
    SUBCASE("unreadable input file is an I/O error") {
        const auto dir = fresh_dir("io_err");
        CHECK(run({"fit-slope", "--input", "/nonexistent/spectrum.csv", "--out", dir.string()}) ==
              cli::kExitIo);
        const auto m = manifest_of(dir);
        CHECK(m["status"] == "error");
    }
    SUBCASE("help exits zero") { CHECK(run({"--help"}) == 0); }
}

TEST_CASE("config file provides values, flags override") {
    const auto dir = fresh_dir("cfgfile");
    const fs::path cfgfile = dir / "cfg.json";
    std::ofstream(cfgfile) << R"({"lambda": 4.0, "shells": 10, "e0": 1.0})";
    const auto out1 = fresh_dir("cfg_out1");
    REQUIRE(run({"shell-steady", "--config", cfgfile.string(), "--out", out1.string()}) == 0);
    auto m = manifest_of(out1);
    CHECK(m["config"]["lambda"] == 4.0);
    CHECK(m["config"]["shells"] == 10);

    const auto out2 = fresh_dir("cfg_out2");
    REQUIRE(run({"shell-steady", "--config", cfgfile.string(), "--lambda", "2", "--out",
                 out2.string()}) == 0);
    m = manifest_of(out2);
    CHECK(m["config"]["lambda"] == 2.0); // flag wins
    CHECK(m["config"]["shells"] == 10);  // file value kept
}

TEST_CASE("json output format") {
    const auto dir = fresh_dir("jsonfmt");
    REQUIRE(run({"shell-steady", "--shells", "5", "--format", "json", "--out", dir.string()}) == 0);
    CHECK(fs::exists(dir / "steady.json"));
    CHECK(!fs::exists(dir / "steady.csv"));
    json rows;
    std::ifstream(dir / "steady.json") >> rows;
    REQUIRE(rows.is_array());
    CHECK(rows.size() == 5);
    CHECK(rows[3]["E"] == 0.25);
}

TEST_CASE("discrepancy report aggregates manifests and flags the known gaps") {
    const auto root = fresh_dir("report_root");
    REQUIRE(run({"keps-constants", "--out", (root / "keps").string()}) == 0);
    REQUIRE(run({"shell-steady", "--lambda", "2", "--shells", "25", "--out",
                 (root / "steady").string()}) == 0);
    REQUIRE(run({"shell-criteria", "--nu", "1e-6", "--shells", "25", "--out",
                 (root / "criteria").string()}) == 0);
    REQUIRE(run({"transient", "--out", (root / "transient").string()}) == 0);

    const auto rep_dir = fresh_dir("report_out");
    REQUIRE(run({"discrepancy-report", "--dir", root.string(), "--out", rep_dir.string()}) == 0);
    json report;
    std::ifstream(rep_dir / "discrepancy_report.json") >> report;
    CHECK(report["n_manifests"] == 4);

    auto row = [&](const std::string& id) -> const json* {
        for (const auto& r : report["rows"])
            if (r["id"] == id) return &r;
        return nullptr;
    };
    const auto* c2 = row("keps_c_2eps");
    REQUIRE(c2 != nullptr);
    CHECK((*c2)["verdict"] == "inconsistent");
    CHECK(std::abs((*c2)["measured"].get<double>() - 2.0114) < 1e-3);
    CHECK((*c2)["reference"] == 1.92);
    CHECK((*c2)["abs_delta"].get<double>() > 0.02);

    const auto* seps = row("keps_sigma_eps");
    REQUIRE(seps != nullptr);
    CHECK((*seps)["verdict"] == "inconsistent");

    const auto* k41 = row("k41_steady_slope");
    REQUIRE(k41 != nullptr);
    CHECK((*k41)["verdict"] == "consistent");

    const auto* trend = row("timescale_ratio_trend");
    REQUIRE(trend != nullptr);
    CHECK((*trend)["verdict"] == "inconsistent");

    const auto* transient = row("transient_direction");
    REQUIRE(transient != nullptr);
    CHECK((*transient)["verdict"] == "inconsistent");

    SUBCASE("empty directory is a usage error") {
        const auto empty = fresh_dir("report_empty");
        const auto out = fresh_dir("report_empty_out");
        CHECK(run({"discrepancy-report", "--dir", empty.string(), "--out", out.string()}) ==
              cli::kExitConfig);
    }
}

TEST_CASE("sweep mode runs configs concurrently into per-run directories") {
    const auto dir = fresh_dir("sweep");
    const fs::path cfgfile = dir / "sweep.json";
    std::ofstream(cfgfile) << R"({"runs": [
        {"subcommand": "shell-steady", "lambda": 2.0, "shells": 8},
        {"subcommand": "keps-constants"},
        {"subcommand": "transient", "samples": 11}
    ]})";
    const auto out = dir / "sweep_out";
    REQUIRE(run({"--config", cfgfile.string(), "--jobs", "3", "--out", out.string()}) == 0);
    CHECK(fs::exists(out / "run_000" / "manifest.json"));
    CHECK(fs::exists(out / "run_001" / "manifest.json"));
    CHECK(fs::exists(out / "run_002" / "manifest.json"));
    CHECK(manifest_of(out / "run_001")["subcommand"] == "keps-constants");

    SUBCASE("a failing run fails the sweep but not the others") {
        const fs::path bad = dir / "bad.json";
        std::ofstream(bad) << R"({"runs": [
            {"subcommand": "shell-steady", "shells": 4},
            {"subcommand": "keps-decay", "eps0": 0.0}
        ]})";
        const auto out2 = dir / "sweep_bad";
        CHECK(run({"--config", bad.string(), "--jobs", "2", "--out", out2.string()}) ==
              cli::kExitConfig);
        CHECK(manifest_of(out2 / "run_000")["status"] == "ok");
        CHECK(manifest_of(out2 / "run_001")["status"] == "error");
    }
}

TEST_CASE("burgers subcommand records steepening summaries and claims") {
    const auto dir = fresh_dir("burgers_cli");
    REQUIRE(run({"burgers", "--grid", "256", "--nu", "0.05", "--t-end", "1.0", "--out",
                 dir.string()}) == 0);
    const auto m = manifest_of(dir);
    CHECK(m["status"] == "ok");
    CHECK(fs::exists(dir / "diagnostics.csv"));
    const auto* mono = claim_by_id(m, "burgers_energy_monotonic");
    REQUIRE(mono != nullptr);
    CHECK((*mono)["verdict"] == "consistent");
    const auto* grad = claim_by_id(m, "burgers_gradient_vanishing");
    REQUIRE(grad != nullptr);
    CHECK((*grad)["verdict"] == "inconsistent"); // gradients grow, they do not vanish
    CHECK(m["derived"]["min_grad_overall"].get<double>() < -1.0);
}

TEST_CASE("tao subcommand integrates the amplitude cascade") {
    const auto dir = fresh_dir("tao_cli");
    REQUIRE(run({"tao", "--modes", "6", "--nu", "1e-4", "--ic", "steady", "--t-end", "0.4",
                 "--out", dir.string()}) == 0);
    const auto m = manifest_of(dir);
    CHECK(m["status"] == "ok");
    CHECK(m["derived"]["coefficients"].size() == 6);
    CHECK(fs::exists(dir / "tao_series.csv"));
    CHECK(m["outputs"][0]["rows"].get<int>() >= 2);
}

TEST_CASE("burgers snapshots land in numbered field files") {
    const auto dir = fresh_dir("burgers_snap");
    REQUIRE(run({"burgers", "--grid", "64", "--nu", "0.1", "--t-end", "0.2", "--snapshots", "50",
                 "--out", dir.string()}) == 0);
    CHECK(fs::exists(dir / "field_0000.csv"));
    CHECK(fs::exists(dir / "field_0001.csv"));
    std::istringstream csv(slurp(dir / "field_0000.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,u");
}

TEST_CASE("tao-compare emits the identification table") {
    const auto dir = fresh_dir("taocmp");
    REQUIRE(run({"tao-compare", "--modes", "8", "--ic", "steady", "--t-end", "0.5", "--out",
                 dir.string()}) == 0);
    const auto m = manifest_of(dir);
    const auto* ident = claim_by_id(m, "tao_initial_identification");
    REQUIRE(ident != nullptr);
    CHECK((*ident)["verdict"] == "consistent");
    CHECK(fs::exists(dir / "compare_initial.csv"));
    CHECK(fs::exists(dir / "compare_series.csv"));
    CHECK(m["derived"]["final_max_rel_diff"].get<double>() > 1e-4); // trajectories drift apart
}

TEST_CASE("shell-analytic measures the closed-form vs cascade-ODE gap") {
    const auto dir = fresh_dir("analytic_cli");
    REQUIRE(run({"shell-analytic", "--shells", "12", "--t-end", "3", "--out", dir.string()}) == 0);
    const auto m = manifest_of(dir);
    const auto* gap = claim_by_id(m, "analytic_vs_model");
    REQUIRE(gap != nullptr);
    CHECK((*gap)["verdict"] == "inconsistent");
    CHECK((*gap)["measured"].get<double>() > 0.1);
}

TEST_CASE("closure-spectrum subcommand emits slopes and the crossover check") {
    const auto dir = fresh_dir("closure_cli");
    REQUIRE(run({"closure-spectrum", "--out", dir.string()}) == 0);
    const auto m = manifest_of(dir);
    CHECK(std::abs(m["derived"]["k_c"].get<double>() - 512.0) < 1e-9);
    CHECK(m["derived"]["hermitian"] == true);
    CHECK(claim_by_id(m, "crossover_balance") != nullptr);
    CHECK((*claim_by_id(m, "crossover_balance"))["verdict"] == "consistent");
    CHECK((*claim_by_id(m, "closure_raw_inertial_slope"))["verdict"] == "consistent");
    CHECK((*claim_by_id(m, "closure_corrected_inertial_slope"))["verdict"] == "consistent");
    CHECK((*claim_by_id(m, "closure_raw_dissipation_slope"))["verdict"] == "inconsistent");
    CHECK((*claim_by_id(m, "closure_corrected_dissipation_slope"))["verdict"] == "inconsistent");
}
