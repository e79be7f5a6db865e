#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "scg/equilibrium_1d.hpp"

using namespace scg;
using doctest::Approx;

namespace {

Scenario linear_scenario(double a, double b, double c_fn, double c_fp) {
    ScenarioParams p;
    p.group_a = {Distribution::uniform(), CostFunction::linear(a), {0.4}};
    p.group_b = {Distribution::uniform(), CostFunction::linear(b), {0.3}};
    p.c_fn = c_fn;
    p.c_fp = c_fp;
    p.lambda = 0.75;
    return Scenario(p);
}

Scenario example1() {
    ScenarioParams p;
    p.group_a = {Distribution::uniform(), CostFunction::sqrt_linear(8, 1), {0.4}};
    p.group_b = {Distribution::uniform(), CostFunction::sqrt_linear(12, 0), {0.3}};
    p.lambda = 0.75;
    return Scenario(p);
}

Scenario example2() { return linear_scenario(3, 4, 2.0 / 3.0, 1.0 / 3.0); }

Scenario proportional_scenario(CostFunction ca, CostFunction cb, double tau_a, double tau_b) {
    ScenarioParams p;
    p.group_a = {Distribution::uniform(), std::move(ca), {tau_a}};
    p.group_b = {Distribution::uniform(), std::move(cb), {tau_b}};
    return Scenario(p);
}

Group1D group(CostFunction c, double tau) { return {Distribution::uniform(), std::move(c), {tau}}; }

}  // namespace

TEST_CASE("sigma_boundary examples") {
    const auto none = SubsidyPlan::none();
    CHECK(sigma_boundary(group(CostFunction::sqrt_linear(12, 0), 0.3), none).sigma == Approx(0.398).epsilon(1e-3));
    CHECK(sigma_boundary(group(CostFunction::linear(3), 0.4), none).sigma == Approx(0.7333).epsilon(1e-3));
    CHECK(sigma_boundary(group(CostFunction::linear(4), 0.3), SubsidyPlan::proportional(0.994)).sigma ==
          Approx(0.5515).epsilon(1e-3));
    CHECK(sigma_boundary(group(CostFunction::linear(4), 0.3), SubsidyPlan::flat(0.2)).sigma ==
          Approx(oracle::sigma_linear(4, 0.3, 1.2)));
    const auto sat = sigma_boundary(group(CostFunction::linear(1), 0.5), none);
    CHECK(sat.sigma == 1.0);
    CHECK(sat.saturated);
    CHECK_FALSE(sigma_boundary(group(CostFunction::linear(2), 0.5), none).saturated);
}

TEST_CASE("ell examples") {
    const auto none = SubsidyPlan::none();
    CHECK(ell(CostFunction::linear(4), 0.64, none) == Approx(0.39));
    CHECK(ell(CostFunction::linear(3), 0.55, none) == Approx(0.2167).epsilon(1e-3));
    CHECK(ell(CostFunction::linear(1), 0.5, none) == 0.0);
    CHECK(ell(CostFunction::linear(4), 0.7333, SubsidyPlan::proportional(0.806)) ==
          Approx(oracle::ell_linear(4, 0.7333, 1.0 / 0.806)));
}

TEST_CASE("ell and sigma_boundary properties") {
    oracle::Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        const auto p = oracle::random_scenario(rng);
        const auto plan = oracle::random_plan(rng);
        for (const Group1D* g : {&p.group_a, &p.group_b}) {
            const auto sb = sigma_boundary(*g, plan);
            if (!sb.saturated) REQUIRE(std::abs(ell(*g, sb.sigma, plan) - g->tau()) <= 1e-8);
        }
        const Scenario s(p);
        REQUIRE(sigma_boundary(s.b(), SubsidyPlan::none()).sigma <= sigma_boundary(s.a(), SubsidyPlan::none()).sigma);
        double prev = -1.0;
        for (int k = 0; k <= 50; ++k) {
            const double y = k / 50.0;
            const double lb = ell(s.b(), y, SubsidyPlan::none());
            const double la = ell(s.a(), y, SubsidyPlan::none());
            REQUIRE(lb >= prev);
            REQUIRE(lb <= y);
            REQUIRE(la <= lb + 1e-9);
            prev = lb;
        }
    }
}

TEST_CASE("best_response_1d examples") {
    const auto g = group(CostFunction::linear(4), 0.3);
    const auto none = SubsidyPlan::none();
    auto r = best_response_1d(g, 0.35, {0.55}, none);
    CHECK(r.moved);
    CHECK(r.y == 0.55);
    CHECK(r.paid_cost == Approx(0.8));
    CHECK(r.payoff == Approx(0.2));
    CHECK(r.payoff == Approx(oracle::best_payoff_1d(g.cost, 0.35, 0.55, none)));

    r = best_response_1d(g, 0.55, {0.55}, SubsidyPlan::proportional(0.5));
    CHECK_FALSE(r.moved);
    CHECK(r.payoff == 1.0);

    r = best_response_1d(g, 0.2, {0.55}, none);
    CHECK_FALSE(r.moved);
    CHECK(r.y == 0.2);
    CHECK(r.payoff == 0.0);

    // Indifferent candidate at the band edge moves.
    r = best_response_1d(g, 0.25, {0.5}, none);
    CHECK(r.moved);
    CHECK(r.payoff == Approx(0.0).epsilon(1e-12));
    CHECK(r.payoff >= 0.0);
}

TEST_CASE("learner_cost_1d examples") {
    const auto none = SubsidyPlan::none();
    auto pen = learner_cost_1d(example2(), {0.55}, none);
    CHECK(pen.fn_b == Approx(0.0).epsilon(1e-12));
    CHECK(pen.fp_a == Approx((1.0 / 3.0) * 0.5 * (0.4 - 0.55 + 1.0 / 3.0)));
    CHECK(pen.fp_a == Approx(0.0306).epsilon(1e-3));
    CHECK(pen.total == Approx(pen.fp_a));
    CHECK_FALSE(pen.dominated);

    pen = learner_cost_1d(example2(), {0.64}, none);
    CHECK(pen.fn_b == Approx((2.0 / 3.0) * 0.5 * 0.09));
    CHECK(pen.fp_a == Approx((1.0 / 3.0) * 0.5 * (0.4 - (0.64 * 3 - 1) / 3)));
    CHECK(pen.fp_a == Approx(0.0156).epsilon(1e-3));

    // Identical groups: sigma_A = sigma_B and perfect classification.
    auto same = linear_scenario(3, 3, 1, 1);
    ScenarioParams p = same.params();
    p.group_b.rule.tau = 0.4;
    const Scenario sym(p);
    const double s0 = sigma_boundary(sym.a(), none).sigma;
    CHECK(learner_cost_1d(sym, {s0}, none).total == Approx(0.0).epsilon(1e-12));

    // Outside the undominated interval the cost is still reported, flagged dominated.
    pen = learner_cost_1d(example2(), {0.8}, none);
    CHECK(pen.dominated);
    CHECK(pen.fn_a > 0.0);
    pen = learner_cost_1d(example2(), {0.5}, none);
    CHECK(pen.dominated);
    CHECK(pen.fp_b > 0.0);
}

TEST_CASE("interval endpoints carry a single error type") {
    oracle::Rng rng(32);
    const auto none = SubsidyPlan::none();
    for (int i = 0; i < 200; ++i) {
        const Scenario s(oracle::random_scenario(rng));
        const auto iv = undominated_interval(s, none);
        if (iv.hi.saturated) continue;
        const auto at_a = learner_cost_1d(s, {iv.hi.sigma}, none);
        REQUIRE(at_a.fp_a == Approx(0.0).epsilon(1e-9));
        REQUIRE(at_a.fp_b == 0.0);
        REQUIRE(at_a.fn_a == Approx(0.0).epsilon(1e-9));
        const auto at_b = learner_cost_1d(s, {iv.lo.sigma}, none);
        REQUIRE(at_b.fn_b == Approx(0.0).epsilon(1e-9));
        REQUIRE(at_b.fn_a == 0.0);
        REQUIRE(at_b.fp_b == Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("error intervals") {
    const auto e = error_intervals(example1(), {0.398232}, SubsidyPlan::none());
    CHECK(e.fp_a_lo == Approx(0.272).epsilon(1e-3));
    CHECK(e.fp_a_hi == 0.4);
    CHECK(e.fn_b_hi == Approx(0.3).epsilon(1e-4));
    const auto f = error_intervals(example1(), {0.546359}, SubsidyPlan::proportional(0.558));
    CHECK(f.fn_b_hi == Approx(0.348).epsilon(1e-3));
}

TEST_CASE("equilibrium_threshold examples") {
    auto eq = equilibrium_threshold(example1(), SubsidyPlan::none());
    CHECK(eq.threshold.sigma == Approx(0.398).epsilon(1e-3));
    CHECK(eq.threshold.sigma == Approx(eq.interval.lo.sigma).epsilon(1e-9));

    auto convex = proportional_scenario(CostFunction::power_sum({{0.5 * 6, 2.0}}), CostFunction::power_sum({{6, 2.0}}),
                                        0.4, 0.3);
    eq = equilibrium_threshold(convex, SubsidyPlan::none());
    CHECK(eq.threshold.sigma == Approx(eq.interval.hi.sigma).epsilon(1e-6));

    auto affine = proportional_scenario(CostFunction::linear(3), CostFunction::linear(4), 0.4, 0.3);
    eq = equilibrium_threshold(affine, SubsidyPlan::none());
    CHECK(eq.threshold.sigma == eq.interval.lo.sigma);
}

TEST_CASE("equilibrium is the grid minimum") {
    oracle::Rng rng(33);
    for (int i = 0; i < 30; ++i) {
        const Scenario s(oracle::random_scenario(rng));
        const auto plan = oracle::random_plan(rng);
        const auto eq = equilibrium_threshold(s, plan);
        const auto iv = eq.interval;
        if (!(iv.hi.sigma > iv.lo.sigma)) continue;
        for (int k = 0; k <= 400; ++k) {
            const double sg = iv.lo.sigma + (iv.hi.sigma - iv.lo.sigma) * k / 400.0;
            REQUIRE(eq.penalty.total <= learner_cost_1d(s, {sg}, plan).total + 1e-12);
        }
    }
}

TEST_CASE("curvature prediction") {
    CHECK(curvature_prediction(proportional_scenario(CostFunction::sqrt_linear(8, 0), CostFunction::sqrt_linear(12, 0),
                                                     0.4, 0.3)) == CurvaturePrediction::SigmaB);
    CHECK(curvature_prediction(proportional_scenario(CostFunction::power_sum({{0.5, 2.0}}),
                                                     CostFunction::power_sum({{1.0, 2.0}}), 0.4, 0.3)) ==
          CurvaturePrediction::SigmaA);
    CHECK(curvature_prediction(proportional_scenario(CostFunction::linear(3), CostFunction::linear(4), 0.4, 0.3)) ==
          CurvaturePrediction::Indifferent);
    // Example 1 costs are not proportional.
    CHECK(curvature_prediction(example1()) == CurvaturePrediction::NotApplicable);
    // Asymmetric penalties.
    CHECK(curvature_prediction(example2()) == CurvaturePrediction::NotApplicable);
    CHECK(to_string(CurvaturePrediction::SigmaA) == "sigma_a");

    const auto unclipped = proportional_scenario(CostFunction::power_sum({{10, 2.0}}),
                                                 CostFunction::power_sum({{20, 2.0}}), 0.4, 0.3);
    CHECK(curvature_prediction(unclipped) == CurvaturePrediction::SigmaA);
    // c_A(sigma_B) < 1: every group-A candidate below sigma_B reaches it, l_A = 0 there.
    const auto clipped = proportional_scenario(CostFunction::power_sum({{1.5, 3.0}}),
                                               CostFunction::power_sum({{6, 3.0}}), 0.5, 0.3);
    CHECK(curvature_prediction(clipped) == CurvaturePrediction::NotApplicable);
    const auto eq = equilibrium_threshold(clipped, SubsidyPlan::none());
    CHECK(eq.threshold.sigma < eq.interval.hi.sigma);
}

TEST_CASE("equilibrium agrees with the curvature prediction") {
    oracle::Rng rng(36);
    int applicable = 0;
    for (int i = 0; i < 300; ++i) {
        const int family = i % 3;
        const double q = rng.uniform(0.1, 0.95), tau_b = rng.uniform(0.05, 0.5);
        const double tau_a = tau_b + rng.uniform(0.02, 0.4);
        const double e = family == 0 ? rng.uniform(0.3, 0.9) : family == 1 ? rng.uniform(1.2, 3.0) : 1.0;
        const double k = rng.uniform(0.8, 12.0);
        const auto s = proportional_scenario(CostFunction::power_sum({{q * k, e}}), CostFunction::power_sum({{k, e}}),
                                             tau_a, tau_b);
        const auto eq = equilibrium_threshold(s, SubsidyPlan::none());
        const double lo = eq.interval.lo.sigma, hi = eq.interval.hi.sigma;
        switch (curvature_prediction(s)) {
            case CurvaturePrediction::SigmaB: CHECK(eq.threshold.sigma == Approx(lo).epsilon(1e-6)); break;
            case CurvaturePrediction::SigmaA: CHECK(eq.threshold.sigma == Approx(hi).epsilon(1e-6)); break;
            case CurvaturePrediction::Indifferent:
                CHECK(learner_cost_1d(s, {lo}, SubsidyPlan::none()).total ==
                      Approx(learner_cost_1d(s, {hi}, SubsidyPlan::none()).total).epsilon(1e-9));
                break;
            case CurvaturePrediction::NotApplicable: continue;
        }
        ++applicable;
    }
    CHECK(applicable > 150);
}

TEST_CASE("best response matches brute force") {
    oracle::Rng rng(34);
    for (int i = 0; i < 1000; ++i) {
        const auto p = oracle::random_scenario(rng);
        const auto& g = rng.coin() ? p.group_a : p.group_b;
        const auto plan = oracle::random_plan(rng);
        const double x = rng.uniform(), sigma = rng.uniform();
        const auto r = best_response_1d(g, x, {sigma}, plan);
        REQUIRE(r.payoff >= 0.0);
        REQUIRE(r.y >= x);
        REQUIRE(std::abs(r.payoff - oracle::best_payoff_1d(g.cost, x, sigma, plan, 1e-3)) <= 2e-4);
    }
}

TEST_CASE("learner cost agrees with simulation") {
    oracle::Rng rng(35);
    for (int i = 0; i < 3; ++i) {
        const Scenario s(oracle::random_scenario(rng));
        const auto plan = oracle::random_plan(rng);
        const auto iv = undominated_interval(s, plan);
        const double sigma = iv.lo.sigma + rng.uniform() * (std::max(iv.lo.sigma, iv.hi.sigma) - iv.lo.sigma);
        const auto pen = learner_cost_1d(s, {sigma}, plan);
        const auto sim = oracle::simulate_1d(s, sigma, plan, 200'000, 100 + i);
        REQUIRE(std::abs(pen.total - sim.penalty.mean) <= std::max(3.0 * sim.penalty.se, 1e-12));
    }
}
