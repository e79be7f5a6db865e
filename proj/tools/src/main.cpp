#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scg/reports/commands.hpp"

namespace sr = scg::reports;

namespace {

int emit(const sr::ReportBundle& b, const std::optional<std::string>& out_flag,
         const std::optional<std::string>& from_config) {
    const auto dir = sr::resolve_output_dir(out_flag, from_config);
    const auto files = sr::write_bundle(dir, b);
    std::cout << b.summary;
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    return sr::kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strategic classification game solver"};
    app.require_subcommand(1);

    std::string config_path, regime = "manip", param, range, family = "proportional";
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<double> at;

    auto* eq = app.add_subcommand("equilibrium", "Solve one regime for a scenario config");
    eq->add_option("config", config_path, "Scenario config (JSON)")->required();
    eq->add_option("--regime", regime, "none | manip | prop | flat")->capture_default_str();
    eq->add_option("--seed", seed, "Monte Carlo seed (d-D configs)");
    eq->add_option("--out", out, "Output directory");

    auto* rp = app.add_subcommand("reproduce-paper", "Golden table over the published examples");
    rp->add_option("--out", out, "Output directory");

    auto* sw = app.add_subcommand("sweep", "Sweep one parameter over a grid");
    sw->add_option("config", config_path, "Scenario config (JSON)")->required();
    sw->add_option("--param", param, "sigma | beta | alpha | lambda")->required();
    sw->add_option("--range", range, "lo:hi:steps")->required();
    sw->add_option("--at", at, "Threshold held fixed in beta/alpha sweeps");
    sw->add_option("--family", family, "Subsidy family for lambda sweeps: proportional | flat")
        ->check(CLI::IsMember({"proportional", "flat"}))
        ->capture_default_str();
    sw->add_option("--seed", seed, "Monte Carlo seed (d-D configs)");
    sw->add_option("--out", out, "Output directory");

    sr::ParadoxRequest preq;
    auto* px = app.add_subcommand("paradox-search", "Random search for subsidy paradoxes");
    px->add_option("--trials", preq.trials, "Number of random scenarios")->capture_default_str();
    px->add_option("--seed", preq.seed, "RNG seed")->capture_default_str();
    px->add_flag("--flat", preq.flat_only, "Record flat-subsidy paradoxes only");
    px->add_flag("--with-example1", preq.include_example1, "Use the first published example as trial 0");
    px->add_option("--subsidy-grid", preq.subsidy_grid, "Subsidy search grid")->capture_default_str();
    px->add_option("--delta-grid", preq.delta_grid, "Candidate grid for payoff deltas")->capture_default_str();
    px->add_option("--out", out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return sr::kInvalidInput;
    }

    try {
        if (eq->parsed()) {
            const auto r = sr::parse_regime(regime);
            const auto cfg = sr::load_config(config_path);
            return emit(sr::equilibrium_report(cfg, r, seed), out, cfg.run.output_dir);
        }
        if (rp->parsed()) {
            const auto rows = sr::golden_rows();
            emit(sr::reproduce_report(rows), out, std::nullopt);
            return sr::golden_exit_code(rows);
        }
        if (sw->parsed()) {
            sr::SweepRequest req;
            req.param = sr::parse_sweep_param(param);
            req.range = sr::parse_range(range);
            req.at_sigma = at;
            req.family = family == "flat" ? scg::SubsidyFamily::Flat : scg::SubsidyFamily::Proportional;
            req.seed = seed;
            const auto cfg = sr::load_config(config_path);
            return emit(sr::sweep_report(cfg, req), out, cfg.run.output_dir);
        }
        if (px->parsed()) return emit(sr::paradox_report(preq), out, std::nullopt);
    } catch (const sr::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sr::kInvalidInput;
    } catch (const scg::ValidationError& e) {
        std::cerr << "error: invalid scenario: " << e.what() << "\n";
        return sr::kInvalidInput;
    } catch (const scg::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return sr::kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sr::kFailed;
    }
    return sr::kFailed;
}
