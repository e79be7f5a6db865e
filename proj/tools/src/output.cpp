#include "scg/reports/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace scg::reports {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string provenance_analytic() { return "analytic"; }
std::string provenance_quadrature() { return "quadrature"; }
std::string provenance_monte_carlo(double std_error) { return "monte-carlo(se=" + format_number(std_error) + ")"; }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("csv row width differs from header");
    rows_.push_back(std::move(cells));
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(cells[i]);
        }
        out += "\r\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            ++i;
            continue;
        }
        any = true;
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r' || c == '\n') {
            end_field();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
        } else {
            field += c;
        }
        ++i;
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
    if (any || !field.empty()) {
        end_field();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                         const std::optional<std::string>& from_config) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("SCG_OUTPUT_DIR"); env && *env) return env;
    if (from_config && !from_config->empty()) return *from_config;
    return "scg_out";
}

namespace {

std::filesystem::path write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return path;
}

}  // namespace

std::vector<std::filesystem::path> write_bundle(const std::filesystem::path& dir, const ReportBundle& b) {
    std::vector<std::filesystem::path> written;
    written.push_back(write_file(dir / (b.stem + ".json"), b.machine.dump(2) + "\n"));
    for (const auto& [name, table] : b.tables) {
        const auto file = name.empty() ? b.stem + ".csv" : b.stem + "_" + name + ".csv";
        written.push_back(write_file(dir / file, table.str()));
    }
    written.push_back(write_file(dir / (b.stem + ".txt"), b.summary));
    for (const auto& [rel, content] : b.extra_files) written.push_back(write_file(dir / rel, content));
    return written;
}

}  // namespace scg::reports
