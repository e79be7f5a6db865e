#include <charconv>
#include <cmath>
#include <sstream>

#include "detail.hpp"
#include "scg/reports/commands.hpp"

namespace scg::reports {

SweepParam parse_sweep_param(std::string_view s) {
    if (s == "sigma") return SweepParam::Sigma;
    if (s == "beta") return SweepParam::Beta;
    if (s == "alpha") return SweepParam::Alpha;
    if (s == "lambda") return SweepParam::Lambda;
    throw ConfigError("--param: unknown parameter '" + std::string(s) + "' (sigma | beta | alpha | lambda)");
}

std::string to_string(SweepParam p) {
    switch (p) {
        case SweepParam::Sigma: return "sigma";
        case SweepParam::Beta: return "beta";
        case SweepParam::Alpha: return "alpha";
        case SweepParam::Lambda: break;
    }
    return "lambda";
}

double SweepRange::at(std::size_t i) const {
    if (steps <= 1) return lo;
    if (i + 1 == steps) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc{} || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError("--range: " + std::string(what) + " '" + std::string(s) + "' is not a number");
    }
    return v;
}

}  // namespace

SweepRange parse_range(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw ConfigError("--range: expected lo:hi:steps, got '" + std::string(text) + "'");
    }
    SweepRange r;
    r.lo = parse_double(text.substr(0, c1), "lo");
    r.hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "hi");
    const auto st = text.substr(c2 + 1);
    long long n = 0;
    const auto res = std::from_chars(st.data(), st.data() + st.size(), n);
    if (st.empty() || res.ec != std::errc{} || res.ptr != st.data() + st.size()) {
        throw ConfigError("--range: steps '" + std::string(st) + "' is not an integer");
    }
    if (n < 1) throw ConfigError("--range: steps must be at least 1");
    if (r.lo > r.hi) throw ConfigError("--range: lo exceeds hi");
    if (n == 1 && r.lo != r.hi) throw ConfigError("--range: a single step needs lo == hi");
    r.steps = static_cast<std::size_t>(n);
    return r;
}

namespace {

void check_domain(SweepParam p, const SweepRange& r) {
    const auto name = to_string(p);
    switch (p) {
        case SweepParam::Sigma:
            if (r.lo < 0.0 || r.hi > 1.0) throw ConfigError("--range: sigma must lie in [0, 1]");
            break;
        case SweepParam::Beta:
            if (r.lo <= 0.0 || r.hi > 1.0) throw ConfigError("--range: beta must lie in (0, 1]");
            break;
        case SweepParam::Alpha:
        case SweepParam::Lambda:
            if (r.lo < 0.0) throw ConfigError("--range: " + name + " must be non-negative");
            break;
    }
}

SubsidyPlan plan_at(SweepParam p, double v) {
    if (p == SweepParam::Beta) return SubsidyPlan::proportional(v);
    if (p == SweepParam::Alpha) return SubsidyPlan::flat(v);
    return SubsidyPlan::none();
}

ReportBundle sweep_1d(const ScenarioConfig& cfg, const SweepRequest& req) {
    const auto s = cfg.scenario();
    const auto none = SubsidyPlan::none();
    const auto exact = provenance_analytic();
    const auto quad = provenance_quadrature();

    double fixed_sigma = 0.0;
    if (req.param == SweepParam::Beta || req.param == SweepParam::Alpha) {
        if (req.at_sigma) {
            if (!(*req.at_sigma >= 0.0 && *req.at_sigma <= 1.0)) throw ConfigError("--at: sigma must lie in [0, 1]");
            fixed_sigma = *req.at_sigma;
        } else {
            fixed_sigma = learner_threshold(s, none, detail::search_options(cfg.run)).threshold.sigma;
        }
    }

    CsvTable t({"step", "param", "sigma", "subsidy_parameter", "fn_b", "fp_a", "fn_a", "fp_b", "subsidy_money",
                "total", "welfare_a", "welfare_b", "dominated", "provenance"});
    Json rows = Json::array();
    for (std::size_t i = 0; i < req.range.steps; ++i) {
        const double v = req.range.at(i);
        double sigma = v;
        SubsidyPlan plan = none;
        Penalty pen;
        if (req.param == SweepParam::Lambda) {
            auto p = s.params();
            p.lambda = v;
            const Scenario sl(p);
            const auto opt = optimize_subsidy(sl, req.family, detail::subsidy_options(cfg.run));
            sigma = opt.threshold.sigma;
            plan = opt.plan;
            pen = opt.penalty;
        } else {
            if (req.param != SweepParam::Sigma) {
                sigma = fixed_sigma;
                plan = plan_at(req.param, v);
            }
            pen = learner_cost_1d(s, {sigma}, plan);
        }
        // Welfare does not depend on lambda, so the base scenario serves for every row.
        // The row's provenance column names its weakest cell, and welfare is always integrated.
        const double wa = group_welfare(s, {sigma}, plan, GroupId::A);
        const double wb = group_welfare(s, {sigma}, plan, GroupId::B);
        const bool spends = pen.subsidy_money != 0.0;
        t.add_row({std::to_string(i), format_number(v), format_number(sigma), format_number(plan.parameter()),
                   format_number(pen.fn_b), format_number(pen.fp_a), format_number(pen.fn_a), format_number(pen.fp_b),
                   format_number(pen.subsidy_money), format_number(pen.total), format_number(wa), format_number(wb),
                   detail::bool_text(pen.dominated), quad});
        Json row;
        row["step"] = i;
        row["param"] = v;
        row["sigma"] = sigma;
        row["subsidy"] = detail::plan_json(plan);
        row["penalty"] = detail::penalty_json(pen);
        row["welfare"] = {{"a", wa}, {"b", wb}};
        row["provenance"] = {{"penalty", spends ? quad : exact}, {"welfare", quad}};
        rows.push_back(std::move(row));
    }

    ReportBundle b;
    b.stem = "sweep";
    b.machine["command"] = "sweep";
    b.machine["scenario"] = cfg.name;
    b.machine["param"] = to_string(req.param);
    b.machine["range"] = {{"lo", req.range.lo}, {"hi", req.range.hi}, {"steps", req.range.steps}};
    if (req.param == SweepParam::Beta || req.param == SweepParam::Alpha) b.machine["fixed_sigma"] = fixed_sigma;
    if (req.param == SweepParam::Lambda) b.machine["family"] = to_string(req.family);
    b.machine["rows"] = std::move(rows);
    b.machine["config"] = to_json(cfg);
    b.tables.emplace_back("", std::move(t));

    std::ostringstream os;
    os << "scenario " << cfg.name << ": swept " << to_string(req.param) << " over [" << format_fixed(req.range.lo)
       << ", " << format_fixed(req.range.hi) << "] in " << req.range.steps << " steps\n";
    if (req.param == SweepParam::Beta || req.param == SweepParam::Alpha) {
        os << "threshold held at sigma = " << format_fixed(fixed_sigma) << "\n";
    }
    if (req.param == SweepParam::Lambda) os << "subsidy re-optimised per step (" << to_string(req.family) << ")\n";
    b.summary = os.str();
    return b;
}

ReportBundle sweep_nd(const ScenarioConfig& cfg, const SweepRequest& req) {
    if (req.param != SweepParam::Sigma) {
        throw ConfigError("--param: d-D configs support only 'sigma' (classifier offset along the direction)");
    }
    const auto s = cfg.scenario_nd();
    const auto dir = cfg.direction();
    const MonteCarloOptions mc{cfg.run.mc_samples, req.seed.value_or(cfg.run.seed)};
    const auto none = SubsidyPlan::none();

    CsvTable t({"step", "param", "fn_b", "fn_b_se", "fp_a", "fp_a_se", "fn_a", "fn_a_se", "fp_b", "fp_b_se",
                "total", "total_se", "dominated", "provenance"});
    Json rows = Json::array();
    for (std::size_t i = 0; i < req.range.steps; ++i) {
        const double g0 = req.range.at(i);
        const auto p = learner_cost_nd(s, {dir, g0}, none, mc);
        const auto f = [](const Estimate& e) { return std::pair{format_number(e.value), format_number(e.std_error)}; };
        const auto [fnb, fnb_se] = f(p.fn_b);
        const auto [fpa, fpa_se] = f(p.fp_a);
        const auto [fna, fna_se] = f(p.fn_a);
        const auto [fpb, fpb_se] = f(p.fp_b);
        const auto [tot, tot_se] = f(p.total);
        t.add_row({std::to_string(i), format_number(g0), fnb, fnb_se, fpa, fpa_se, fna, fna_se, fpb, fpb_se, tot,
                   tot_se, detail::bool_text(p.dominated), provenance_monte_carlo(p.total.std_error)});
        rows.push_back({{"step", i}, {"g0", g0}, {"penalty", detail::penalty_json(p)}});
    }

    ReportBundle b;
    b.stem = "sweep";
    b.machine["command"] = "sweep";
    b.machine["scenario"] = cfg.name;
    b.machine["param"] = "sigma";
    b.machine["direction"] = dir;
    b.machine["range"] = {{"lo", req.range.lo}, {"hi", req.range.hi}, {"steps", req.range.steps}};
    b.machine["seed"] = mc.seed;
    b.machine["rows"] = std::move(rows);
    b.machine["config"] = to_json(cfg);
    b.tables.emplace_back("", std::move(t));

    std::ostringstream os;
    os << "scenario " << cfg.name << " (d=" << s.dim() << "): swept offset over [" << format_fixed(req.range.lo) << ", "
       << format_fixed(req.range.hi) << "] in " << req.range.steps << " steps, " << mc.samples
       << " samples per group, seed " << mc.seed << "\n";
    b.summary = os.str();
    return b;
}

}  // namespace

ReportBundle sweep_report(const ScenarioConfig& cfg, const SweepRequest& req) {
    if (req.range.steps == 0) throw ConfigError("--range: steps must be at least 1");
    if (!cfg.is_nd()) check_domain(req.param, req.range);
    return cfg.is_nd() ? sweep_nd(cfg, req) : sweep_1d(cfg, req);
}

}  // namespace scg::reports
