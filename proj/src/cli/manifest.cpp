#include "manifest.hpp"

#include <algorithm>
#include <fstream>

#include "cascadelab/errors.hpp"
#include "cascadelab/version.hpp"

namespace cascadelab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

json manifest_to_json(const RunManifest& m) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["subcommand"] = m.subcommand;
    j["config"] = m.config;
    j["derived"] = m.derived;
    j["duration_seconds"] = m.duration_seconds;
    j["status"] = m.status;
    if (!m.error.empty()) j["error"] = m.error;

    json outs = json::array();
    for (const auto& o : m.outputs) outs.push_back({{"file", o.file}, {"rows", o.rows}});
    j["outputs"] = outs;

    json cl = json::array();
    for (const auto& c : m.claims) {
        json e;
        e["id"] = c.id;
        e["measured"] = c.measured;
        if (c.expected_override) e["expected"] = *c.expected_override;
        if (c.tolerance_override) e["tolerance"] = *c.tolerance_override;
        if (!c.detail.empty()) e["detail"] = c.detail;
        const auto v = claims::evaluate(c);
        if (v.known) {
            e["reference"] = v.expected;
            e["abs_delta"] = v.abs_delta;
            e["verdict"] = v.consistent ? "consistent" : "inconsistent";
        }
        cl.push_back(std::move(e));
    }
    j["claims"] = cl;
    return j;
}

void write_manifest(const fs::path& out_dir, const RunManifest& m) {
    std::ofstream out(out_dir / "manifest.json");
    if (!out) throw io_error("cannot write manifest in " + out_dir.string());
    out << manifest_to_json(m).dump(2) << '\n';
    if (!out) throw io_error("failed writing manifest in " + out_dir.string());
}

json build_discrepancy_report(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw config_error("discrepancy-report: " + dir.string() + " is not a directory");

    std::vector<fs::path> manifests;
    for (auto it = fs::recursive_directory_iterator(dir, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) throw io_error("discrepancy-report: cannot scan " + dir.string());
        if (it->is_regular_file() && it->path().filename() == "manifest.json")
            manifests.push_back(it->path());
    }
    std::sort(manifests.begin(), manifests.end());
    if (manifests.empty())
        throw config_error("discrepancy-report: no manifest.json found under " + dir.string());

    json rows = json::array();
    std::size_t n_inconsistent = 0, n_consistent = 0;
    for (const auto& path : manifests) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open " + path.string());
        json mj;
        try {
            in >> mj;
        } catch (const json::exception& e) {
            throw io_error("bad manifest " + path.string() + ": " + e.what());
        }
        if (!mj.contains("claims")) continue;
        for (const auto& cj : mj["claims"]) {
            claims::Claim c;
            c.id = cj.value("id", "");
            c.measured = cj.value("measured", 0.0);
            if (cj.contains("expected")) c.expected_override = cj["expected"].get<double>();
            if (cj.contains("tolerance")) c.tolerance_override = cj["tolerance"].get<double>();
            const auto v = claims::evaluate(c);
            json row;
            row["id"] = c.id;
            const auto* spec = claims::find(c.id);
            row["description"] = spec ? std::string(spec->description) : cj.value("detail", "");
            row["measured"] = c.measured;
            if (v.known) {
                row["reference"] = v.expected;
                row["tolerance"] = v.tolerance;
                row["abs_delta"] = v.abs_delta;
                row["verdict"] = v.consistent ? "consistent" : "inconsistent";
                (v.consistent ? n_consistent : n_inconsistent)++;
            } else {
                row["verdict"] = "unknown-claim";
            }
            if (cj.contains("detail")) row["detail"] = cj["detail"];
            row["source"] = fs::relative(path, dir).string();
            rows.push_back(std::move(row));
        }
    }

    json report;
    report["tool"] = kToolName;
    report["version"] = kVersion;
    report["scanned_directory"] = dir.string();
    report["n_manifests"] = manifests.size();
    report["n_consistent"] = n_consistent;
    report["n_inconsistent"] = n_inconsistent;
    report["rows"] = rows;
    return report;
}

} // namespace cascadelab::cli
