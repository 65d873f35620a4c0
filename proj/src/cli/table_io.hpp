#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace cascadelab::csvio {

enum class Format { Csv, Json };

Format parse_format(const std::string& s); // "csv" | "json"

// Shortest decimal representation that parses back to the same double.
std::string fmt_double(double v);

using Cell = std::variant<double, long long, std::string>;

// Writes one table either as CSV (header + rows, streamed) or as a JSON array
// of objects (buffered). Numeric cells keep full round-trip precision in both
// formats.
class TableWriter {
public:
    TableWriter(const std::filesystem::path& base_no_ext, Format format,
                std::vector<std::string> columns);
    void row(const std::vector<Cell>& cells);
    std::size_t rows() const { return n_rows_; }
    const std::filesystem::path& path() const { return path_; }
    // flushes/dumps; returns the row count written
    std::size_t finalize();
    ~TableWriter();

private:
    Format format_;
    std::vector<std::string> columns_;
    std::filesystem::path path_;
    std::ofstream out_;
    nlohmann::json buffer_ = nlohmann::json::array();
    std::size_t n_rows_ = 0;
    bool finalized_ = false;
};

struct TableData {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows; // non-numeric cells parse to NaN
    std::size_t column(const std::string& name) const; // throws config_error when absent
};

TableData read_csv(const std::filesystem::path& path);

} // namespace cascadelab::csvio
