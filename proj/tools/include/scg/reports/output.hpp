#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scg/reports/config.hpp"

namespace scg::reports {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// Fixed-precision text for human summaries.
std::string format_fixed(double v, int digits = 6);

/// How a number was obtained.
std::string provenance_analytic();
std::string provenance_quadrature();
std::string provenance_monte_carlo(double std_error);

/// RFC 4180 table: comma separated, CRLF line ends, fields quoted when needed.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(std::string_view field);

/// Parses RFC 4180 text (quoted fields, embedded CRLF, doubled quotes).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Everything a command produces. Files are named <stem>.json, <stem>.csv
/// (or <stem>_<name>.csv for extra tables) and <stem>.txt.
struct ReportBundle {
    std::string stem;
    Json machine;
    std::vector<std::pair<std::string, CsvTable>> tables;
    std::string summary;
    /// Additional files relative to the output directory.
    std::vector<std::pair<std::string, std::string>> extra_files;
};

/// --out flag, then $SCG_OUTPUT_DIR, then the config's run.output_dir, then "scg_out".
std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                         const std::optional<std::string>& from_config);

/// Writes the bundle; returns the paths written in order.
std::vector<std::filesystem::path> write_bundle(const std::filesystem::path& dir, const ReportBundle& b);

}  // namespace scg::reports
