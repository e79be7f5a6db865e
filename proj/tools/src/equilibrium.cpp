#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "detail.hpp"
#include "scg/reports/commands.hpp"

namespace scg::reports {

using detail::bool_text;

Regime parse_regime(std::string_view s) {
    if (s == "none") return Regime::NoManipulation;
    if (s == "manip") return Regime::Manipulation;
    if (s == "prop") return Regime::ProportionalSubsidy;
    if (s == "flat") return Regime::FlatSubsidy;
    throw ConfigError("--regime: unknown regime '" + std::string(s) + "' (none | manip | prop | flat)");
}

namespace {

RegimeReport solve_regime(const Scenario& s, Regime regime, const RunOptions& run) {
    switch (regime) {
        case Regime::NoManipulation: return welfare_nonmanipulation(s, run.sigma_grid);
        case Regime::Manipulation: {
            const auto eq = learner_threshold(s, SubsidyPlan::none(), detail::search_options(run));
            return evaluate_regime(s, regime, eq.threshold, SubsidyPlan::none());
        }
        case Regime::ProportionalSubsidy:
        case Regime::FlatSubsidy: {
            const auto fam =
                regime == Regime::FlatSubsidy ? SubsidyFamily::Flat : SubsidyFamily::Proportional;
            const auto opt = optimize_subsidy(s, fam, detail::subsidy_options(run));
            return evaluate_regime(s, regime, opt.threshold, opt.plan);
        }
    }
    throw std::logic_error("unhandled regime");
}

ReportBundle report_1d(const ScenarioConfig& cfg, Regime regime) {
    const auto s = cfg.scenario();
    const auto r = solve_regime(s, regime, cfg.run);
    const double sigma = r.classifier.sigma;
    const auto iv = undominated_interval(s, r.subsidy);

    // Error bands on the unmanipulated feature.
    double fp_lo, fp_hi, fn_lo, fn_hi;
    if (regime == Regime::NoManipulation) {
        fp_lo = std::min(sigma, s.a().tau());
        fp_hi = s.a().tau();
        fn_lo = s.b().tau();
        fn_hi = std::max(sigma, s.b().tau());
    } else {
        const auto e = error_intervals(s, r.classifier, r.subsidy);
        fp_lo = e.fp_a_lo;
        fp_hi = e.fp_a_hi;
        fn_lo = e.fn_b_lo;
        fn_hi = e.fn_b_hi;
    }

    const bool spends = r.penalty.subsidy_money != 0.0;
    const auto quad = provenance_quadrature();
    const auto exact = provenance_analytic();

    ReportBundle b;
    b.stem = "equilibrium";
    b.machine["command"] = "equilibrium";
    b.machine["scenario"] = cfg.name;
    b.machine["regime"] = to_string(regime);
    b.machine["classifier"] = {{"sigma", sigma}};
    b.machine["subsidy"] = detail::plan_json(r.subsidy);
    b.machine["penalty"] = detail::penalty_json(r.penalty);
    b.machine["welfare"] = {{"a", r.welfare_a}, {"b", r.welfare_b}};
    b.machine["learner_utility"] = r.learner_utility;
    b.machine["undominated_interval"] = {{"sigma_b", iv.lo.sigma}, {"sigma_a", iv.hi.sigma}};
    b.machine["error_intervals"] = {{"fp_a", {fp_lo, fp_hi}}, {"fn_b", {fn_lo, fn_hi}}};
    b.machine["curvature_prediction"] = to_string(curvature_prediction(s));
    b.machine["provenance"] = {{"classifier", exact},
                               {"penalty", spends ? quad : exact},
                               {"welfare", quad},
                               {"error_intervals", exact}};
    b.machine["config"] = to_json(cfg);

    CsvTable t({"quantity", "value", "provenance"});
    auto row = [&](const std::string& q, double v, const std::string& p) { t.add_row({q, format_number(v), p}); };
    row("sigma", sigma, exact);
    row("subsidy_parameter", r.subsidy.parameter(), exact);
    row("fn_b", r.penalty.fn_b, exact);
    row("fp_a", r.penalty.fp_a, exact);
    row("fn_a", r.penalty.fn_a, exact);
    row("fp_b", r.penalty.fp_b, exact);
    row("subsidy_money", r.penalty.subsidy_money, quad);
    row("total", r.penalty.total, spends ? quad : exact);
    row("welfare_a", r.welfare_a, quad);
    row("welfare_b", r.welfare_b, quad);
    row("learner_utility", r.learner_utility, exact);
    row("sigma_b", iv.lo.sigma, exact);
    row("sigma_a", iv.hi.sigma, exact);
    row("fp_a_lo", fp_lo, exact);
    row("fp_a_hi", fp_hi, exact);
    row("fn_b_lo", fn_lo, exact);
    row("fn_b_hi", fn_hi, exact);
    b.tables.emplace_back("", std::move(t));

    std::ostringstream os;
    os << "scenario " << cfg.name << ", regime " << to_string(regime) << "\n"
       << "  threshold sigma     " << format_fixed(sigma) << "\n"
       << "  subsidy             " << r.subsidy.describe() << "\n"
       << "  undominated [sB,sA] [" << format_fixed(iv.lo.sigma) << ", " << format_fixed(iv.hi.sigma) << "]\n"
       << "  FP band, group A    [" << format_fixed(fp_lo) << ", " << format_fixed(fp_hi) << ")\n"
       << "  FN band, group B    [" << format_fixed(fn_lo) << ", " << format_fixed(fn_hi) << ")\n"
       << "  penalty             " << format_fixed(r.penalty.total) << " (errors " << format_fixed(r.penalty.errors())
       << ", spend " << format_fixed(r.penalty.subsidy_money) << ")\n"
       << "  welfare A / B       " << format_fixed(r.welfare_a) << " / " << format_fixed(r.welfare_b) << "\n"
       << "  learner utility     " << format_fixed(r.learner_utility) << "\n"
       << "  dominated           " << bool_text(r.penalty.dominated) << "\n";
    b.summary = os.str();
    return b;
}

ReportBundle report_nd(const ScenarioConfig& cfg, Regime regime, std::optional<std::uint64_t> seed) {
    if (regime != Regime::Manipulation) {
        throw ConfigError("--regime: d-D configs support only 'manip' (offset sweep along a fixed direction)");
    }
    const auto s = cfg.scenario_nd();
    const auto dir = cfg.direction();
    const MonteCarloOptions mc{cfg.run.mc_samples, seed.value_or(cfg.run.seed)};
    const auto none = SubsidyPlan::none();

    // Undominated offsets exist in closed form only when the true rules share a direction.
    double lo, hi;
    const bool shared = s.a().rule.weights == s.b().rule.weights && dir == s.a().rule.weights;
    if (shared) {
        std::tie(lo, hi) = undominated_offsets(s, none);
    } else {
        lo = 0.0;
        hi = 0.0;
        for (double w : dir) hi += w;
    }
    const auto sw = sweep_offsets_nd(s, dir, lo, hi, cfg.run.offset_steps, none, mc);
    const auto& p = sw.penalty;

    ReportBundle b;
    b.stem = "equilibrium";
    b.machine["command"] = "equilibrium";
    b.machine["scenario"] = cfg.name;
    b.machine["regime"] = to_string(regime);
    b.machine["classifier"] = {{"g", sw.best.g}, {"g0", sw.best.g0}};
    b.machine["offset_range"] = {lo, hi};
    b.machine["offset_range_source"] = shared ? "perfect classifiers" : "full score range";
    b.machine["penalty"] = detail::penalty_json(p);
    b.machine["seed"] = mc.seed;
    b.machine["provenance"] = {{"penalty", provenance_monte_carlo(p.total.std_error)}};
    b.machine["config"] = to_json(cfg);

    CsvTable t({"quantity", "value", "std_error", "provenance"});
    auto row = [&](const std::string& q, const Estimate& e) {
        t.add_row({q, format_number(e.value), format_number(e.std_error), provenance_monte_carlo(e.std_error)});
    };
    t.add_row({"g0", format_number(sw.best.g0), "0", provenance_analytic()});
    row("fn_b", p.fn_b);
    row("fp_a", p.fp_a);
    row("fn_a", p.fn_a);
    row("fp_b", p.fp_b);
    row("subsidy_money", p.subsidy_money);
    row("total", p.total);
    b.tables.emplace_back("", std::move(t));

    std::ostringstream os;
    os << "scenario " << cfg.name << " (d=" << s.dim() << "), regime " << to_string(regime) << "\n"
       << "  offsets searched    [" << format_fixed(lo) << ", " << format_fixed(hi) << "] in "
       << cfg.run.offset_steps << " steps\n"
       << "  best offset g0      " << format_fixed(sw.best.g0) << "\n"
       << "  penalty             " << format_fixed(p.total.value) << " +/- " << format_fixed(p.total.std_error, 8)
       << " (" << p.samples << " samples, seed " << mc.seed << ")\n"
       << "  dominated           " << bool_text(p.dominated) << "\n";
    b.summary = os.str();
    return b;
}

}  // namespace

ReportBundle equilibrium_report(const ScenarioConfig& cfg, Regime regime, std::optional<std::uint64_t> seed) {
    return cfg.is_nd() ? report_nd(cfg, regime, seed) : report_1d(cfg, regime);
}

}  // namespace scg::reports
