#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scg/reports/config.hpp"
#include "scg/reports/output.hpp"
#include "scg/subsidy_welfare.hpp"

namespace scg::reports {

enum ExitCode : int { kOk = 0, kFailed = 1, kInvalidInput = 2, kNumerical = 3 };

/// "none" | "manip" | "prop" | "flat".
Regime parse_regime(std::string_view s);

ReportBundle equilibrium_report(const ScenarioConfig& cfg, Regime regime,
                                std::optional<std::uint64_t> seed = std::nullopt);

struct GoldenRow {
    enum class Status { Pass, Fail, Discrepancy };

    std::string quantity;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    Status status = Status::Fail;
    std::string provenance;
    std::string note;
};

std::string to_string(GoldenRow::Status s);

/// Published example values against recomputed ones.
std::vector<GoldenRow> golden_rows();
ReportBundle reproduce_report(const std::vector<GoldenRow>& rows);
/// kOk unless some row (other than documented discrepancies) fails.
int golden_exit_code(const std::vector<GoldenRow>& rows);

enum class SweepParam { Sigma, Beta, Alpha, Lambda };

SweepParam parse_sweep_param(std::string_view s);
std::string to_string(SweepParam p);

struct SweepRange {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 0;

    double at(std::size_t i) const;
};

/// "lo:hi:steps" with steps >= 1 and lo <= hi (steps == 1 needs lo == hi).
SweepRange parse_range(std::string_view text);

struct SweepRequest {
    SweepParam param = SweepParam::Sigma;
    SweepRange range;
    /// Fixed threshold for beta/alpha sweeps; defaults to the no-subsidy equilibrium.
    std::optional<double> at_sigma;
    /// Subsidy family re-optimised in lambda sweeps.
    SubsidyFamily family = SubsidyFamily::Proportional;
    std::optional<std::uint64_t> seed;
};

ReportBundle sweep_report(const ScenarioConfig& cfg, const SweepRequest& req);

struct ParadoxRequest {
    std::size_t trials = 50;
    std::uint64_t seed = 1;
    bool flat_only = false;
    /// Run the first published example as trial 0.
    bool include_example1 = false;
    std::size_t subsidy_grid = 64;
    std::size_t delta_grid = 2000;
};

ReportBundle paradox_report(const ParadoxRequest& req);

/// The three published 1-D examples.
ScenarioConfig example_config(int which);

}  // namespace scg::reports
