#include <random>
#include <sstream>

#include "detail.hpp"
#include "scg/reports/commands.hpp"

namespace scg::reports {

namespace {

// Group B's cost is group A's plus a non-decreasing extra, which keeps the cost condition.
std::pair<CostFunction, CostFunction> random_costs(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: {
            const double s = in(3.0, 10.0), l = in(0.0, 2.0);
            return {CostFunction::sqrt_linear(s, l), CostFunction::sqrt_linear(s + in(0.0, 6.0), l + in(0.0, 1.0))};
        }
        case 1: {
            const double k = in(1.5, 6.0);
            return {CostFunction::linear(k), CostFunction::linear(k + in(0.1, 4.0))};
        }
        default: {
            const double e1 = in(0.3, 0.9), e2 = in(1.1, 2.5);
            const double k1 = in(1.0, 6.0), k2 = in(0.5, 4.0);
            return {CostFunction::power_sum({{k1, e1}, {k2, e2}}),
                    CostFunction::power_sum({{k1 + in(0.0, 4.0), e1}, {k2 + in(0.0, 3.0), e2}})};
        }
    }
}

ScenarioParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
    auto [ca, cb] = random_costs(rng);
    ScenarioParams p;
    const double tau_b = in(0.2, 0.45);
    p.group_a = {Distribution::uniform(), std::move(ca), {tau_b + in(0.05, 0.2)}};
    p.group_b = {Distribution::uniform(), std::move(cb), {tau_b}};
    p.c_fn = in(0.5, 1.5);
    p.c_fp = in(0.5, 1.5);
    p.lambda = in(0.25, 1.0);
    return p;
}

}  // namespace

ReportBundle paradox_report(const ParadoxRequest& req) {
    std::mt19937_64 rng(req.seed);
    CompareOptions opts;
    opts.subsidy.sigma_grid = req.subsidy_grid;
    opts.subsidy.param_grid = req.subsidy_grid;
    opts.delta_grid = req.delta_grid;

    CsvTable t({"trial", "name", "paradox_proportional", "paradox_flat", "manipulation_regret", "beta", "alpha",
                "provenance"});
    Json witnesses = Json::array();
    ReportBundle b;
    std::size_t prop_hits = 0, flat_hits = 0, regret_hits = 0, skipped = 0;

    for (std::size_t trial = 0; trial < req.trials; ++trial) {
        ScenarioParams params;
        if (trial == 0 && req.include_example1) {
            params = example_config(1).scenario().params();
        } else {
            params = random_params(rng);
        }
        std::optional<Scenario> s;
        try {
            s.emplace(params);
        } catch (const ValidationError&) {
            ++skipped;
            continue;
        }
        const auto cmp = compare_regimes(*s, opts);
        prop_hits += cmp.paradox_proportional;
        flat_hits += cmp.paradox_flat;
        regret_hits += cmp.manipulation_regret;
        const bool keep = req.flat_only ? cmp.paradox_flat
                                        : cmp.paradox_proportional || cmp.paradox_flat || cmp.manipulation_regret;
        if (!keep) continue;

        char name[32];
        std::snprintf(name, sizeof name, "trial_%04zu", trial);
        const double beta = cmp.get(Regime::ProportionalSubsidy).subsidy.parameter();
        const double alpha = cmp.get(Regime::FlatSubsidy).subsidy.parameter();
        t.add_row({std::to_string(trial), name, detail::bool_text(cmp.paradox_proportional),
                   detail::bool_text(cmp.paradox_flat), detail::bool_text(cmp.manipulation_regret),
                   format_number(beta), format_number(alpha), provenance_quadrature()});
        const auto file = std::string("witnesses/") + name + ".json";
        b.extra_files.emplace_back(file, to_json(config_from(*s, name)).dump(2) + "\n");
        witnesses.push_back({{"trial", trial},
                             {"name", name},
                             {"file", file},
                             {"paradox_proportional", cmp.paradox_proportional},
                             {"paradox_flat", cmp.paradox_flat},
                             {"manipulation_regret", cmp.manipulation_regret},
                             {"beta", beta},
                             {"alpha", alpha}});
    }

    b.stem = "paradox";
    b.machine["command"] = "paradox-search";
    b.machine["trials"] = req.trials;
    b.machine["seed"] = req.seed;
    b.machine["flat_only"] = req.flat_only;
    b.machine["include_example1"] = req.include_example1;
    b.machine["counts"] = {{"paradox_proportional", prop_hits},
                           {"paradox_flat", flat_hits},
                           {"manipulation_regret", regret_hits},
                           {"invalid_skipped", skipped}};
    b.machine["witnesses"] = std::move(witnesses);
    b.tables.emplace_back("", std::move(t));

    std::ostringstream os;
    os << req.trials << " trials (seed " << req.seed << ")";
    if (req.flat_only) os << ", flat subsidies only";
    os << "\n";
    if (req.flat_only && flat_hits == 0) {
        os << "no flat-subsidy paradox found in " << req.trials << " trials\n";
    } else {
        os << "  proportional paradox  " << prop_hits << "\n"
           << "  flat paradox          " << flat_hits << "\n"
           << "  manipulation regret   " << regret_hits << "\n";
    }
    if (skipped) os << "  invalid draws skipped " << skipped << "\n";
    b.summary = os.str();
    return b;
}

}  // namespace scg::reports
