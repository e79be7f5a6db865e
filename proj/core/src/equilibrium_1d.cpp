#include "scg/equilibrium_1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "scg/numerics.hpp"
#include "scg/subsidy_cost.hpp"

namespace scg {

BoundaryPoint sigma_boundary(const Group1D& g, const SubsidyPlan& plan) {
    const double target = g.cost(g.tau()) + plan.budget();
    if (target >= g.cost.at_one()) return {1.0, target > g.cost.at_one()};
    return {g.cost.invert(target), false};
}

double ell(const CostFunction& c, double y, const SubsidyPlan& plan) {
    const double v = c(y) - plan.budget();
    if (v <= c.at_zero()) return 0.0;
    return c.invert(v);
}

double ell(const Group1D& g, double y, const SubsidyPlan& plan) { return ell(g.cost, y, plan); }

double admission_floor(const Group1D& g, double sigma, const SubsidyPlan& plan) {
    if (sigma <= 0.0) return 0.0;
    if (sigma > 1.0) return std::numeric_limits<double>::infinity();
    return ell(g, sigma, plan);
}

BestResponse1D best_response_1d(const Group1D& g, double x, Threshold1D t, const SubsidyPlan& plan) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("best_response_1d: x outside [0,1]");
    if (t.admits(x)) return {x, 0.0, 1.0, false};
    if (t.sigma > 1.0 || x < ell(g, t.sigma, plan)) return {x, 0.0, 0.0, false};
    // Indifferent candidates (cost exactly 1) move; rounding at the band edge is clamped.
    const double paid = std::min(1.0, manipulation_cost(g.cost, x, t.sigma, plan));
    return {t.sigma, paid, 1.0 - paid, true};
}

UndominatedInterval undominated_interval(const Scenario& s, const SubsidyPlan& plan) {
    return {sigma_boundary(s.b(), plan), sigma_boundary(s.a(), SubsidyPlan::none())};
}

Penalty learner_cost_1d(const Scenario& s, Threshold1D t, const SubsidyPlan& plan) {
    const auto& a = s.a();
    const auto& b = s.b();
    const double floor_a = admission_floor(a, t.sigma, SubsidyPlan::none());
    const double floor_b = admission_floor(b, t.sigma, plan);

    Penalty p;
    p.fn_b = s.c_fn() * s.p_b() * clamped_mass(b.distribution, b.tau(), floor_b);
    p.fp_b = s.c_fp() * s.p_b() * clamped_mass(b.distribution, floor_b, b.tau());
    p.fp_a = s.c_fp() * s.p_a() * clamped_mass(a.distribution, floor_a, a.tau());
    p.fn_a = s.c_fn() * s.p_a() * clamped_mass(a.distribution, a.tau(), floor_a);
    p.subsidy_money = plan.is_trivial() ? 0.0 : s.p_b() * subsidy_money(b, t.sigma, plan);
    p.total = p.errors() + s.lambda() * p.subsidy_money;
    p.dominated = !undominated_interval(s, plan).contains(t.sigma);
    return p;
}

ErrorIntervals error_intervals(const Scenario& s, Threshold1D t, const SubsidyPlan& plan) {
    ErrorIntervals e;
    const double floor_a = std::min(1.0, admission_floor(s.a(), t.sigma, SubsidyPlan::none()));
    const double floor_b = std::min(1.0, admission_floor(s.b(), t.sigma, plan));
    e.fp_a_lo = std::min(floor_a, s.a().tau());
    e.fp_a_hi = s.a().tau();
    e.fn_b_lo = s.b().tau();
    e.fn_b_hi = std::max(floor_b, s.b().tau());
    return e;
}

EquilibriumResult equilibrium_threshold(const Scenario& s, const SubsidyPlan& plan, SearchOptions opts) {
    EquilibriumResult out;
    out.interval = undominated_interval(s, plan);
    const double lo = out.interval.lo.sigma;
    const double hi = out.interval.hi.sigma;
    auto cost_at = [&](double sigma) { return learner_cost_1d(s, Threshold1D{sigma}, plan).total; };
    // An inverted interval (sigma_B(plan) > sigma_A) collapses to its lower end.
    const double sigma = hi > lo ? numerics::grid_minimize(cost_at, lo, hi, opts.grid, opts.refine_tol).x
                                 : std::min(lo, hi);
    out.threshold = {sigma};
    out.penalty = learner_cost_1d(s, out.threshold, plan);
    return out;
}

EquilibriumResult equalize_errors_threshold(const Scenario& s, const SubsidyPlan& plan) {
    EquilibriumResult out;
    out.interval = undominated_interval(s, plan);
    const double lo = out.interval.lo.sigma;
    const double hi = std::max(lo, out.interval.hi.sigma);
    // Net imbalance: p_B * FN mass - p_A * FP mass, non-decreasing in sigma.
    auto imbalance = [&](double sigma) {
        const double fb = admission_floor(s.b(), sigma, plan);
        const double fa = admission_floor(s.a(), sigma, SubsidyPlan::none());
        return s.p_b() * clamped_mass(s.b().distribution, s.b().tau(), fb) -
               s.p_a() * clamped_mass(s.a().distribution, fa, s.a().tau());
    };
    const double sigma = numerics::bisect_increasing(imbalance, 0.0, lo, hi, 1e-14);
    out.threshold = {sigma};
    out.penalty = learner_cost_1d(s, out.threshold, plan);
    return out;
}

EquilibriumResult learner_threshold(const Scenario& s, const SubsidyPlan& plan, SearchOptions opts) {
    if (s.mode() == LearnerMode::EqualizeErrors) return equalize_errors_threshold(s, plan);
    return equilibrium_threshold(s, plan, opts);
}

std::string to_string(CurvaturePrediction p) {
    switch (p) {
        case CurvaturePrediction::SigmaB: return "sigma_b";
        case CurvaturePrediction::SigmaA: return "sigma_a";
        case CurvaturePrediction::Indifferent: return "indifferent";
        case CurvaturePrediction::NotApplicable: break;
    }
    return "not_applicable";
}

CurvaturePrediction curvature_prediction(const Scenario& s) {
    if (!s.a().distribution.is_uniform() || !s.b().distribution.is_uniform()) {
        return CurvaturePrediction::NotApplicable;
    }
    if (std::abs(s.c_fn() - s.c_fp()) > 1e-12 || std::abs(s.p_a() - s.p_b()) > 1e-12) {
        return CurvaturePrediction::NotApplicable;
    }
    constexpr int kGrid = 256;
    const auto& ca = s.a().cost;
    const auto& cb = s.b().cost;

    // Proportionality c_A = q * c_B, including at x = 0.
    const double q = ca(1.0) / cb(1.0);
    if (!(q > 0.0 && q < 1.0)) return CurvaturePrediction::NotApplicable;
    for (int i = 0; i <= kGrid; ++i) {
        const double x = static_cast<double>(i) / kGrid;
        if (std::abs(ca(x) - q * cb(x)) > 1e-9 * std::max(1.0, cb(x))) return CurvaturePrediction::NotApplicable;
    }

    const double h = 1.0 / kGrid;
    const double eps = 1e-11 * std::max(1.0, cb.at_one());
    int concave = 0, convex = 0, flat = 0;
    for (int i = 1; i < kGrid; ++i) {
        const double x = i * h;
        const double d2 = cb(x - h) - 2.0 * cb(x) + cb(x + h);
        if (d2 < -eps) {
            ++concave;
        } else if (d2 > eps) {
            ++convex;
        } else {
            ++flat;
        }
    }
    const int interior = kGrid - 1;
    if (concave == interior) return CurvaturePrediction::SigmaB;

    // The slope comparison needs l_A = c_A^{-1}(c_A(sigma) - 1) unclipped on the
    // whole interval. Where l_A sits at 0 the error length l_B - l_A grows, which
    // keeps sigma_B optimal for concave costs but not otherwise.
    const auto none = SubsidyPlan::none();
    const double lo = sigma_boundary(s.b(), none).sigma;
    if (lo < sigma_boundary(s.a(), none).sigma && ell(s.a(), lo, none) <= 0.0) {
        return CurvaturePrediction::NotApplicable;
    }
    if (convex == interior) return CurvaturePrediction::SigmaA;
    if (flat == interior) return CurvaturePrediction::Indifferent;
    return CurvaturePrediction::NotApplicable;
}

}  // namespace scg
