#include "table_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "cascadelab/errors.hpp"

namespace cascadelab::csvio {

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw config_error("unknown output format '" + s + "' (expected csv or json)");
}

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

} // namespace

TableWriter::TableWriter(const std::filesystem::path& base_no_ext, Format format,
                         std::vector<std::string> columns)
    : format_(format), columns_(std::move(columns)) {
    path_ = base_no_ext;
    path_ += format_ == Format::Csv ? ".csv" : ".json";
    if (format_ == Format::Csv) {
        out_.open(path_);
        if (!out_) throw io_error("cannot open " + path_.string() + " for writing");
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_escape(columns_[i]);
        }
        out_ << '\n';
    }
}

void TableWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != columns_.size())
        throw io_error("table row has " + std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(columns_.size()));
    if (format_ == Format::Csv) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out_ << fmt_double(v);
                    else if constexpr (std::is_same_v<T, long long>)
                        out_ << v;
                    else
                        out_ << csv_escape(v);
                },
                cells[i]);
        }
        out_ << '\n';
    } else {
        nlohmann::json obj;
        for (std::size_t i = 0; i < cells.size(); ++i)
            std::visit([&](const auto& v) { obj[columns_[i]] = v; }, cells[i]);
        buffer_.push_back(std::move(obj));
    }
    ++n_rows_;
}

std::size_t TableWriter::finalize() {
    if (finalized_) return n_rows_;
    finalized_ = true;
    if (format_ == Format::Csv) {
        out_.close();
        if (!out_) throw io_error("failed writing " + path_.string());
    } else {
        std::ofstream out(path_);
        if (!out) throw io_error("cannot open " + path_.string() + " for writing");
        out << buffer_.dump(2) << '\n';
        if (!out) throw io_error("failed writing " + path_.string());
    }
    return n_rows_;
}

TableWriter::~TableWriter() {
    try {
        finalize();
    } catch (...) {
        // destructor must not throw; finalize() explicitly where failure matters
    }
}

std::size_t TableData::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw config_error("input table has no column '" + name + "'");
}

TableData read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    TableData table;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        cells.push_back(cur);
        if (header) {
            table.columns = cells;
            header = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            double v = std::numeric_limits<double>::quiet_NaN();
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || p != cell.data() + cell.size())
                v = std::numeric_limits<double>::quiet_NaN();
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty()) throw io_error("empty input table " + path.string());
    return table;
}

} // namespace cascadelab::csvio
