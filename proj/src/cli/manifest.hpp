#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cascadelab/claims.hpp"

namespace cascadelab::cli {

struct OutputRecord {
    std::string file;
    std::size_t rows = 0;
};

// Per-run record: resolved configuration, derived quantities, claim
// measurements, file inventory. Written to <out>/manifest.json even when the
// run fails (status/error record what happened).
struct RunManifest {
    std::string subcommand;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json derived = nlohmann::json::object();
    std::vector<claims::Claim> claims;
    std::vector<OutputRecord> outputs;
    double duration_seconds = 0.0;
    std::string status = "ok";
    std::string error;
};

nlohmann::json manifest_to_json(const RunManifest& m);
void write_manifest(const std::filesystem::path& out_dir, const RunManifest& m);

// Aggregates every manifest.json under `dir` (recursively) into one report.
// Throws config_error when no manifest is found.
nlohmann::json build_discrepancy_report(const std::filesystem::path& dir);

} // namespace cascadelab::cli
