#include "scg/subsidy_welfare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scg/numerics.hpp"
#include "scg/subsidy_cost.hpp"

namespace scg {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::NoManipulation: return "no_manipulation";
        case Regime::Manipulation: return "manipulation";
        case Regime::ProportionalSubsidy: return "proportional_subsidy";
        case Regime::FlatSubsidy: return "flat_subsidy";
    }
    return "unknown";
}

std::string to_string(GroupId g) { return g == GroupId::A ? "A" : "B"; }

std::string to_string(SubsidyFamily f) { return f == SubsidyFamily::Proportional ? "proportional" : "flat"; }

namespace {

struct Candidate {
    double sigma = 0.0;
    double param = 0.0;
    SubsidyPlan plan = SubsidyPlan::none();
    Penalty penalty;
};

// (penalty, spend, sigma) lexicographic with relative tie tolerance.
bool better(const Candidate& l, const Candidate& r) {
    const double tol = numerics::tie_tolerance(r.penalty.total);
    if (l.penalty.total < r.penalty.total - tol) return true;
    if (l.penalty.total > r.penalty.total + tol) return false;
    const double stol = numerics::tie_tolerance(r.penalty.subsidy_money);
    if (l.penalty.subsidy_money < r.penalty.subsidy_money - stol) return true;
    if (l.penalty.subsidy_money > r.penalty.subsidy_money + stol) return false;
    return l.sigma < r.sigma;
}

SubsidyPlan make_plan(SubsidyFamily f, double param) {
    return f == SubsidyFamily::Proportional ? SubsidyPlan::proportional(param) : SubsidyPlan::flat(param);
}

const Group1D& group_of(const Scenario& s, GroupId g) { return g == GroupId::A ? s.a() : s.b(); }

}  // namespace

SubsidyOptimum optimize_subsidy(const Scenario& s, SubsidyFamily family, SubsidySearchOptions opts) {
    const auto& b = s.b();
    const double sigma_a = sigma_boundary(s.a(), SubsidyPlan::none()).sigma;
    // Raw cost from tau_B to sigma_A; a budget beyond it only admits dominated thresholds.
    const double reach = b.cost(std::min(sigma_a, 1.0)) - b.cost(b.tau());

    // Parameter axis runs from the generous end to "no subsidy" (beta=1 / alpha=0).
    double p_gen = 1.0, p_none = 1.0;
    if (family == SubsidyFamily::Proportional) {
        p_gen = reach > 1.0 ? 1.0 / reach : 1.0;
        p_none = 1.0;
    } else {
        p_gen = reach > 1.0 ? reach - 1.0 : 0.0;
        p_none = 0.0;
    }

    auto evaluate = [&](double param, double t) {
        Candidate c;
        c.param = param;
        c.plan = make_plan(family, param);
        const double lo = sigma_boundary(b, c.plan).sigma;
        const double hi = std::max(lo, sigma_a);
        c.sigma = t >= 1.0 ? hi : lo + t * (hi - lo);
        c.penalty = learner_cost_1d(s, Threshold1D{c.sigma}, c.plan);
        return c;
    };

    const std::size_t np = p_gen == p_none ? 1 : std::max<std::size_t>(opts.param_grid, 2);
    const std::size_t nt = std::max<std::size_t>(opts.sigma_grid, 2);
    auto param_at = [&](std::size_t i) {
        if (np == 1 || i + 1 == np) return p_none;
        return p_gen + (p_none - p_gen) * static_cast<double>(i) / static_cast<double>(np - 1);
    };
    auto t_at = [&](std::size_t j) { return j + 1 == nt ? 1.0 : static_cast<double>(j) / static_cast<double>(nt - 1); };

    Candidate best = evaluate(param_at(0), t_at(0));
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            if (i == 0 && j == 0) continue;
            auto c = evaluate(param_at(i), t_at(j));
            if (better(c, best)) {
                best = c;
                bi = i;
                bj = j;
            }
        }
    }
    double t_best = t_at(bj);

    // The no-subsidy equilibrium is always feasible; keep the family at least as good.
    {
        const auto eq = equilibrium_threshold(s, SubsidyPlan::none());
        Candidate c;
        c.param = p_none;
        c.plan = make_plan(family, p_none);
        c.sigma = eq.threshold.sigma;
        c.penalty = learner_cost_1d(s, eq.threshold, c.plan);
        if (better(c, best)) {
            best = c;
            bi = np - 1;
            const double lo = sigma_boundary(b, c.plan).sigma;
            t_best = sigma_a > lo ? (c.sigma - lo) / (sigma_a - lo) : 1.0;
            bj = std::min(nt - 1, static_cast<std::size_t>(std::lround(t_best * static_cast<double>(nt - 1))));
        }
    }

    double p_lo = param_at(bi == 0 ? 0 : bi - 1), p_hi = param_at(std::min(bi + 1, np - 1));
    double t_lo = t_at(bj == 0 ? 0 : bj - 1), t_hi = t_at(std::min(bj + 1, nt - 1));
    if (p_lo > p_hi) std::swap(p_lo, p_hi);
    for (int round = 0; round < opts.refine_rounds; ++round) {
        bool moved = false;
        if (p_hi - p_lo > opts.refine_tol) {
            const double t = t_best;
            const auto r = numerics::golden_section(
                [&](double p) { return evaluate(p, t).penalty.total; }, p_lo, p_hi, opts.refine_tol);
            auto c = evaluate(r.x, t);
            if (better(c, best)) {
                best = c;
                moved = true;
            }
        }
        if (t_hi - t_lo > opts.refine_tol) {
            const double p = best.param;
            const auto r = numerics::golden_section(
                [&](double t) { return evaluate(p, t).penalty.total; }, t_lo, t_hi, opts.refine_tol);
            auto c = evaluate(p, r.x);
            if (better(c, best)) {
                best = c;
                t_best = r.x;
                moved = true;
            }
        }
        if (!moved) break;
    }

    SubsidyOptimum out;
    out.threshold = {best.sigma};
    out.plan = best.plan;
    out.penalty = best.penalty;
    return out;
}

double candidate_payoff(const Scenario& s, GroupId g, double x, Threshold1D t, const SubsidyPlan& plan,
                        bool manipulation) {
    const auto& grp = group_of(s, g);
    if (t.admits(x)) return 1.0;
    if (!manipulation) return 0.0;
    const auto& p = g == GroupId::A ? SubsidyPlan::none() : plan;
    return best_response_1d(grp, x, t, p).payoff;
}

double payoff_integral(const Scenario& s, GroupId g, double lo, double hi, Threshold1D t, const SubsidyPlan& plan,
                       bool manipulation) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (!(hi > lo)) return 0.0;
    const auto& grp = group_of(s, g);
    const auto& d = grp.distribution;
    const SubsidyPlan p = g == GroupId::A ? SubsidyPlan::none() : plan;
    if (t.sigma > 1.0) return 0.0;

    const double sigma = std::max(t.sigma, 0.0);
    double total = clamped_mass(d, std::max(lo, sigma), hi);
    if (!manipulation || t.sigma <= 0.0) return total;

    const double floor = admission_floor(grp, sigma, p);
    const double band_lo = std::max(lo, floor);
    const double band_hi = std::min(hi, sigma);
    if (!(band_hi > band_lo)) return total;

    const auto& c = grp.cost;
    const double c_sigma = c(sigma);
    auto breaks = grp.breakpoints();
    if (p.kind() == SubsidyPlan::Kind::Flat && c_sigma - p.alpha() > c.at_zero()) {
        breaks.push_back(c.invert(c_sigma - p.alpha()));
    }
    auto integrand = [&](double x) {
        const double raw = c_sigma - c(x);
        const double borne = p.candidate_share(raw);
        const double paid = p.learner_share(raw);
        if (std::abs(borne + paid - raw) > 1e-12 * std::max(1.0, raw)) {
            throw NumericalError("subsidy shares do not sum to the raw manipulation cost");
        }
        return (1.0 - std::min(1.0, borne)) * d.density(x);
    };
    total += numerics::integrate(integrand, band_lo, band_hi, breaks);
    return total;
}

double group_welfare(const Scenario& s, Threshold1D t, const SubsidyPlan& plan, GroupId g) {
    return payoff_integral(s, g, 0.0, 1.0, t, plan);
}

RegimeReport evaluate_regime(const Scenario& s, Regime regime, Threshold1D t, const SubsidyPlan& plan) {
    RegimeReport r;
    r.regime = regime;
    r.classifier = t;
    r.subsidy = plan;
    if (regime == Regime::NoManipulation) {
        // Everyone is classified on the unmanipulated feature.
        const auto& a = s.a();
        const auto& b = s.b();
        r.penalty.fn_b = s.c_fn() * s.p_b() * clamped_mass(b.distribution, b.tau(), t.sigma);
        r.penalty.fp_b = s.c_fp() * s.p_b() * clamped_mass(b.distribution, t.sigma, b.tau());
        r.penalty.fp_a = s.c_fp() * s.p_a() * clamped_mass(a.distribution, t.sigma, a.tau());
        r.penalty.fn_a = s.c_fn() * s.p_a() * clamped_mass(a.distribution, a.tau(), t.sigma);
        r.penalty.total = r.penalty.errors();
        r.penalty.dominated = t.sigma < std::min(a.tau(), b.tau()) || t.sigma > std::max(a.tau(), b.tau());
        r.welfare_a = payoff_integral(s, GroupId::A, 0.0, 1.0, t, plan, false);
        r.welfare_b = payoff_integral(s, GroupId::B, 0.0, 1.0, t, plan, false);
    } else {
        r.penalty = learner_cost_1d(s, t, plan);
        r.welfare_a = group_welfare(s, t, plan, GroupId::A);
        r.welfare_b = group_welfare(s, t, plan, GroupId::B);
    }
    r.learner_utility = 1.0 - r.penalty.errors();
    return r;
}

RegimeReport welfare_nonmanipulation(const Scenario& s, std::size_t grid) {
    const auto& a = s.a();
    const auto& b = s.b();
    const double lo = b.tau();
    const double hi = a.tau();
    double tau = lo;
    if (hi > lo) {
        if (s.mode() == LearnerMode::EqualizeErrors) {
            auto imbalance = [&](double x) {
                return s.p_b() * clamped_mass(b.distribution, lo, x) - s.p_a() * clamped_mass(a.distribution, x, hi);
            };
            tau = numerics::bisect_increasing(imbalance, 0.0, lo, hi, 1e-14);
        } else {
            auto cost = [&](double x) {
                return s.c_fn() * s.p_b() * clamped_mass(b.distribution, lo, x) +
                       s.c_fp() * s.p_a() * clamped_mass(a.distribution, x, hi);
            };
            tau = numerics::grid_minimize(cost, lo, hi, grid).x;
        }
    }
    return evaluate_regime(s, Regime::NoManipulation, Threshold1D{tau}, SubsidyPlan::none());
}

const RegimeReport& RegimeComparison::get(Regime r) const {
    for (const auto& rep : reports) {
        if (rep.regime == r) return rep;
    }
    throw std::out_of_range("regime not in comparison: " + to_string(r));
}

namespace {

double payoff_of(const Scenario& s, const RegimeReport& r, GroupId g, double x) {
    return candidate_payoff(s, g, x, r.classifier, r.subsidy, r.regime != Regime::NoManipulation);
}

double integral_of(const Scenario& s, const RegimeReport& r, GroupId g, double lo, double hi) {
    return payoff_integral(s, g, lo, hi, r.classifier, r.subsidy, r.regime != Regime::NoManipulation);
}

// Payoff discontinuities of a regime for a group: the admission floor and sigma.
std::vector<double> kinks(const Scenario& s, const RegimeReport& r, GroupId g) {
    std::vector<double> out;
    const double sigma = r.classifier.sigma;
    if (sigma <= 0.0 || sigma > 1.0) return out;
    out.push_back(sigma);
    if (r.regime != Regime::NoManipulation) {
        const auto plan = g == GroupId::A ? SubsidyPlan::none() : r.subsidy;
        out.push_back(admission_floor(group_of(s, g), sigma, plan));
    }
    return out;
}

}  // namespace

DeltaTable delta_table(const Scenario& s, const RegimeReport& base, const RegimeReport& other, std::size_t grid,
                       double tol) {
    DeltaTable t;
    t.baseline = base.regime;
    const std::size_t n = std::max<std::size_t>(grid, 1);
    for (GroupId g : {GroupId::A, GroupId::B}) {
        auto& cells = g == GroupId::A ? t.a : t.b;
        auto& improved = g == GroupId::A ? t.improved_a : t.improved_b;
        auto& declined = g == GroupId::A ? t.declined_a : t.declined_b;
        const auto& d = group_of(s, g).distribution;
        auto note = [&](double delta) {
            if (delta > tol) ++improved;
            if (delta < -tol) ++declined;
            t.max_gain = std::max(t.max_gain, delta);
            t.max_loss = std::min(t.max_loss, delta);
        };
        cells.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            DeltaCell c;
            c.x_lo = static_cast<double>(i) / static_cast<double>(n);
            c.x_hi = i + 1 == n ? 1.0 : static_cast<double>(i + 1) / static_cast<double>(n);
            const double mid = 0.5 * (c.x_lo + c.x_hi);
            c.mass = interval_mass(d, c.x_lo, c.x_hi);
            c.point_delta = payoff_of(s, other, g, mid) - payoff_of(s, base, g, mid);
            if (c.mass > 0.0) {
                c.mean_delta =
                    (integral_of(s, other, g, c.x_lo, c.x_hi) - integral_of(s, base, g, c.x_lo, c.x_hi)) / c.mass;
            }
            note(c.point_delta);
            cells.push_back(c);
        }
        // Probe both sides of every discontinuity; these can fall between grid points.
        auto probes = kinks(s, base, g);
        const auto more = kinks(s, other, g);
        probes.insert(probes.end(), more.begin(), more.end());
        for (double k : probes) {
            for (double x : {std::nextafter(k, -1.0), k}) {
                if (x < 0.0 || x > 1.0) continue;
                note(payoff_of(s, other, g, x) - payoff_of(s, base, g, x));
            }
        }
    }
    return t;
}

RegimeComparison compare_regimes(const Scenario& s, const CompareOptions& opts) {
    RegimeComparison out;
    auto none = welfare_nonmanipulation(s, opts.search.grid);
    const auto eq = learner_threshold(s, SubsidyPlan::none(), opts.search);
    auto manip = evaluate_regime(s, Regime::Manipulation, eq.threshold, SubsidyPlan::none());

    const auto prop_pt = opts.proportional_point ? *opts.proportional_point
                                                 : optimize_subsidy(s, SubsidyFamily::Proportional, opts.subsidy);
    const auto flat_pt =
        opts.flat_point ? *opts.flat_point : optimize_subsidy(s, SubsidyFamily::Flat, opts.subsidy);
    auto prop = evaluate_regime(s, Regime::ProportionalSubsidy, prop_pt.threshold, prop_pt.plan);
    auto flat = evaluate_regime(s, Regime::FlatSubsidy, flat_pt.threshold, flat_pt.plan);

    manip.deltas = delta_table(s, none, manip, opts.delta_grid, opts.delta_tol);
    prop.deltas = delta_table(s, manip, prop, opts.delta_grid, opts.delta_tol);
    flat.deltas = delta_table(s, manip, flat, opts.delta_grid, opts.delta_tol);

    auto paradox = [](const DeltaTable& d) {
        return d.improved_a == 0 && d.improved_b == 0 && d.declined_a > 0 && d.declined_b > 0;
    };
    out.paradox_proportional = paradox(*prop.deltas);
    out.paradox_flat = paradox(*flat.deltas);

    auto dominates = [](const RegimeReport& l, const RegimeReport& r) {
        auto gt = [](double x, double y) { return x > y + numerics::tie_tolerance(y); };
        return gt(l.welfare_a, r.welfare_a) && gt(l.welfare_b, r.welfare_b) && gt(l.learner_utility, r.learner_utility);
    };
    out.manipulation_regret = dominates(none, manip) && dominates(none, prop) && dominates(none, flat);

    out.reports = {std::move(none), std::move(manip), std::move(prop), std::move(flat)};
    return out;
}

}  // namespace scg
