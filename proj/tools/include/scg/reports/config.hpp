#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "scg/cost_model.hpp"
#include "scg/population.hpp"

namespace scg::reports {

using Json = nlohmann::ordered_json;

/// Bad config file or bad command-line input. The message names the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DistributionSpec {
    /// Empty means uniform; otherwise raw (x, density) knots as written.
    std::vector<std::pair<double, double>> knots;

    Distribution build() const;
    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

struct GroupSpec {
    DistributionSpec distribution;
    cost::Family cost = cost::Linear{1.0};
    double tau = 0.0;
};

struct GroupNDSpec {
    std::vector<DistributionSpec> marginals;
    std::vector<double> costs;
    std::vector<double> weights;
    double tau = 0.0;
};

struct Model1D {
    GroupSpec a;
    GroupSpec b;
    LearnerMode mode = LearnerMode::MinimizePenalty;
};

struct ModelND {
    GroupNDSpec a;
    GroupNDSpec b;
    /// Classifier direction for offset sweeps; defaults to group A's weights.
    std::optional<std::vector<double>> direction;
};

struct RunOptions {
    std::size_t sigma_grid = 2048;
    std::size_t subsidy_grid = 512;
    std::size_t delta_grid = 10'000;
    std::size_t mc_samples = 1'000'000;
    std::uint64_t seed = 20240611;
    std::size_t offset_steps = 41;
    std::optional<std::string> output_dir;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::variant<Model1D, ModelND> model;
    double p_a = 0.5;
    double p_b = 0.5;
    double c_fp = 1.0;
    double c_fn = 1.0;
    double lambda = 0.0;
    RunOptions run;

    bool is_nd() const { return std::holds_alternative<ModelND>(model); }
    /// Throws ConfigError when the scenario is invalid or of the other kind.
    Scenario scenario() const;
    ScenarioND scenario_nd() const;
    std::vector<double> direction() const;
};

/// Strict parse: unknown keys, wrong types and invalid scenarios are rejected.
ScenarioConfig parse_config(const Json& j);
ScenarioConfig load_config(const std::string& path);
Json to_json(const ScenarioConfig& c);

/// Config for an existing 1-D scenario (used for emitted witnesses).
ScenarioConfig config_from(const Scenario& s, std::string name);

std::string to_string(LearnerMode m);

}  // namespace scg::reports
