#include <cmath>
#include <sstream>
#include <stdexcept>

#include "detail.hpp"
#include "scg/reports/commands.hpp"

namespace scg::reports {

namespace {

GroupSpec uniform_group(cost::Family c, double tau) { return {DistributionSpec{}, std::move(c), tau}; }

}  // namespace

ScenarioConfig example_config(int which) {
    ScenarioConfig c;
    Model1D m;
    switch (which) {
        case 1:
            c.name = "example1";
            m.a = uniform_group(cost::SqrtLinear{8.0, 1.0}, 0.4);
            m.b = uniform_group(cost::SqrtLinear{12.0, 0.0}, 0.3);
            c.c_fn = 1.0;
            c.c_fp = 1.0;
            break;
        case 2:
        case 3:
            c.name = which == 2 ? "example2" : "example3";
            m.a = uniform_group(cost::Linear{3.0}, 0.4);
            m.b = uniform_group(cost::Linear{4.0}, 0.3);
            c.c_fn = 2.0 / 3.0;
            c.c_fp = 1.0 / 3.0;
            if (which == 3) m.mode = LearnerMode::EqualizeErrors;
            break;
        default: throw std::invalid_argument("example_config: examples are numbered 1 to 3");
    }
    c.lambda = 0.75;
    c.model = std::move(m);
    return c;
}

std::string to_string(GoldenRow::Status s) {
    switch (s) {
        case GoldenRow::Status::Pass: return "pass";
        case GoldenRow::Status::Fail: return "fail";
        case GoldenRow::Status::Discrepancy: break;
    }
    return "documented discrepancy";
}

namespace {

class Table {
public:
    void check(std::string name, double expected, double computed, double tol, std::string provenance,
               std::string note = {}) {
        GoldenRow r{std::move(name), expected, computed, tol, GoldenRow::Status::Fail, std::move(provenance),
                    std::move(note)};
        if (std::abs(computed - expected) <= tol) r.status = GoldenRow::Status::Pass;
        rows.push_back(std::move(r));
    }

    void holds(std::string name, bool ok, std::string note) {
        check(std::move(name), 1.0, ok ? 1.0 : 0.0, 0.0, provenance_quadrature(), std::move(note));
    }

    void discrepancy(std::string name, double expected, double computed, std::string note) {
        rows.push_back({std::move(name), expected, computed, 0.0, GoldenRow::Status::Discrepancy,
                        provenance_analytic(), std::move(note)});
    }

    std::vector<GoldenRow> rows;
};

ScenarioParams proportional_pair(CostFunction a, CostFunction b) {
    ScenarioParams p;
    p.group_a = {Distribution::uniform(), std::move(a), {0.4}};
    p.group_b = {Distribution::uniform(), std::move(b), {0.3}};
    return p;
}

void curvature_rows(Table& t) {
    struct Case {
        const char* name;
        CostFunction a, b;
        bool at_sigma_a;
    };
    const Case cases[] = {
        {"Prop4.concave", CostFunction::sqrt_linear(8.0, 0.0), CostFunction::sqrt_linear(12.0, 0.0), false},
        {"Prop4.convex", CostFunction::power_sum({{10.0, 2.0}}), CostFunction::power_sum({{20.0, 2.0}}), true},
        {"Prop4.affine", CostFunction::linear(3.0), CostFunction::linear(4.0), false},
    };
    for (const auto& c : cases) {
        const Scenario s(proportional_pair(c.a, c.b));
        const auto eq = equilibrium_threshold(s, SubsidyPlan::none());
        const double want = c.at_sigma_a ? eq.interval.hi.sigma : eq.interval.lo.sigma;
        t.check(c.name, want, eq.threshold.sigma, 1e-6, provenance_analytic(),
                std::string("expected ") + (c.at_sigma_a ? "sigma_A" : "sigma_B") + ", prediction " +
                    to_string(curvature_prediction(s)));
    }
}

}  // namespace

std::vector<GoldenRow> golden_rows() {
    Table t;
    const auto none = SubsidyPlan::none();
    const auto exact = provenance_analytic();
    const auto quad = provenance_quadrature();

    {
        const auto s = example_config(1).scenario();
        const auto eq = learner_threshold(s, none);
        const auto prop = optimize_subsidy(s, SubsidyFamily::Proportional);
        t.check("Example1.sigma_B", 0.398, eq.threshold.sigma, 1e-3, exact);
        t.check("Example1.sigma_prop", 0.546, prop.threshold.sigma, 1e-3, quad);
        t.check("Example1.beta", 0.558, prop.plan.parameter(), 2e-3, quad);
        t.check("Example1.fp_a_lo", 0.272, error_intervals(s, eq.threshold, none).fp_a_lo, 1e-3, exact);
        t.check("Example1.fn_b_hi", 0.348, error_intervals(s, prop.threshold, prop.plan).fn_b_hi, 1e-3, exact,
                "at the subsidy equilibrium");
        CompareOptions opts;
        opts.proportional_point = prop;
        const auto cmp = compare_regimes(s, opts);
        t.holds("Example1.subsidy_paradox", cmp.paradox_proportional,
                "no candidate gains under the proportional subsidy, some in each group lose");
    }
    {
        const auto s = example_config(2).scenario();
        const auto eq = learner_threshold(s, none);
        const auto prop = optimize_subsidy(s, SubsidyFamily::Proportional);
        const auto e = error_intervals(s, eq.threshold, none);
        t.check("Example2.sigma_star", 0.550, eq.threshold.sigma, 1e-3, exact);
        t.check("Example2.fp_a_lo", 0.217, e.fp_a_lo, 1e-3, exact);
        t.check("Example2.fp_a_hi", 0.4, e.fp_a_hi, 1e-3, exact);
        t.check("Example2.sigma_prop", 0.5515, prop.threshold.sigma, 1e-3, quad);
        t.check("Example2.beta", 0.994, prop.plan.parameter(), 2e-3, quad);
        t.check("Example2.fp_a_lo_prop", 0.2185, error_intervals(s, prop.threshold, prop.plan).fp_a_lo, 1.5e-3,
                exact, "published as 0.218-0.219");
    }
    {
        const auto s = example_config(3).scenario();
        const auto iv = undominated_interval(s, none);
        const auto eq = learner_threshold(s, none);
        const auto nm = welfare_nonmanipulation(s);
        const auto plan = SubsidyPlan::proportional(0.806);
        const double sigma_a = iv.hi.sigma;
        t.check("Example3.sigma_A", 0.7333, sigma_a, 1e-3, exact);
        t.check("Example3.sigma_B", 0.55, iv.lo.sigma, 1e-3, exact);
        t.check("Example3.sigma_1", 0.64, eq.threshold.sigma, 5e-3, exact,
                "equalized error masses; published to two decimals");
        t.check("Example3.ell_A", 0.3067, ell(s.a(), 0.64, none), 1e-3, exact, "published rounded to 0.31");
        t.check("Example3.ell_B", 0.390, ell(s.b(), 0.64, none), 1e-3, exact);
        t.check("Example3.ell_B_beta", 0.423, ell(s.b(), sigma_a, plan), 1e-3, exact, "beta = 0.806");
        t.check("Example3.tau_star", 0.35, nm.classifier.sigma, 1e-3, exact);

        const auto manip = evaluate_regime(s, Regime::Manipulation, eq.threshold, none);
        const auto prop = evaluate_regime(s, Regime::ProportionalSubsidy, {sigma_a}, plan);
        t.holds("Example3.welfare_order_A", nm.welfare_a > manip.welfare_a && manip.welfare_a > prop.welfare_a,
                "W_A: non-manipulation > manipulation > proportional");
        t.holds("Example3.welfare_order_B", nm.welfare_b > manip.welfare_b && manip.welfare_b > prop.welfare_b,
                "W_B: non-manipulation > manipulation > proportional");
        t.holds("Example3.utility_order",
                nm.learner_utility > prop.learner_utility && prop.learner_utility > manip.learner_utility,
                "1-C: non-manipulation > proportional > manipulation");
        const auto why = "published totals follow no single weighting convention of the penalty";
        t.discrepancy("Example3.penalty_totals.manipulation", 0.183, manip.penalty.errors(), why);
        t.discrepancy("Example3.penalty_totals.proportional", 0.128, prop.penalty.errors(), why);
        t.discrepancy("Example3.penalty_totals.non_manipulation", 0.1, nm.penalty.errors(), why);
    }
    curvature_rows(t);
    return t.rows;
}

int golden_exit_code(const std::vector<GoldenRow>& rows) {
    for (const auto& r : rows) {
        if (r.status == GoldenRow::Status::Fail) return kFailed;
    }
    return kOk;
}

ReportBundle reproduce_report(const std::vector<GoldenRow>& rows) {
    ReportBundle b;
    b.stem = "reproduce";
    CsvTable t({"quantity", "expected", "computed", "abs_diff", "tolerance", "status", "provenance", "note"});
    Json items = Json::array();
    std::size_t pass = 0, fail = 0, disc = 0;
    std::ostringstream os;
    os << "quantity                                   expected     computed     |diff|       tol      status\n";
    for (const auto& r : rows) {
        const double diff = std::abs(r.computed - r.expected);
        t.add_row({r.quantity, format_number(r.expected), format_number(r.computed), format_number(diff),
                   format_number(r.tolerance), to_string(r.status), r.provenance, r.note});
        items.push_back({{"quantity", r.quantity},
                         {"expected", r.expected},
                         {"computed", r.computed},
                         {"abs_diff", diff},
                         {"tolerance", r.tolerance},
                         {"status", to_string(r.status)},
                         {"provenance", r.provenance},
                         {"note", r.note}});
        char line[256];
        std::snprintf(line, sizeof line, "%-42s %-12.6f %-12.6f %-12.2e %-8.1e %s\n", r.quantity.c_str(),
                      r.expected, r.computed, diff, r.tolerance, to_string(r.status).c_str());
        os << line;
        (r.status == GoldenRow::Status::Pass ? pass : r.status == GoldenRow::Status::Fail ? fail : disc)++;
    }
    os << "\n" << pass << " pass, " << fail << " fail, " << disc << " documented discrepancies\n";
    b.machine["command"] = "reproduce-paper";
    b.machine["rows"] = items;
    b.machine["counts"] = {{"pass", pass}, {"fail", fail}, {"documented_discrepancy", disc}};
    b.machine["exit_code"] = golden_exit_code(rows);
    b.tables.emplace_back("", std::move(t));
    b.summary = os.str();
    return b;
}

}  // namespace scg::reports
