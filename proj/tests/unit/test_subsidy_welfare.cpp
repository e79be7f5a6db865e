#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "scg/subsidy_cost.hpp"
#include "scg/subsidy_welfare.hpp"

using namespace scg;
using doctest::Approx;

namespace {

ScenarioParams linear_params(double a, double b, double tau_a, double tau_b) {
    ScenarioParams p;
    p.group_a = {Distribution::uniform(), CostFunction::linear(a), {tau_a}};
    p.group_b = {Distribution::uniform(), CostFunction::linear(b), {tau_b}};
    return p;
}

Scenario example1() {
    ScenarioParams p;
    p.group_a = {Distribution::uniform(), CostFunction::sqrt_linear(8, 1), {0.4}};
    p.group_b = {Distribution::uniform(), CostFunction::sqrt_linear(12, 0), {0.3}};
    p.lambda = 0.75;
    return Scenario(p);
}

ScenarioParams example2_params() {
    auto p = linear_params(3, 4, 0.4, 0.3);
    p.c_fn = 2.0 / 3.0;
    p.c_fp = 1.0 / 3.0;
    p.lambda = 0.75;
    return p;
}

Scenario example3() {
    auto p = example2_params();
    p.mode = LearnerMode::EqualizeErrors;
    return Scenario(p);
}

const SubsidySearchOptions quick{64, 64, 1e-9, 3};

double cell_sum(const std::vector<DeltaCell>& cells) {
    double s = 0.0;
    for (const auto& c : cells) s += c.mass * c.mean_delta;
    return s;
}

}  // namespace

TEST_CASE("proportional subsidy money") {
    const Group1D b{Distribution::uniform(), CostFunction::linear(4), {0.3}};
    CHECK(subsidy_money_proportional(b, 0.7, 1.0) == 0.0);
    CHECK(subsidy_money_proportional(b, 0.5515, 0.994) == Approx(7.59e-4).epsilon(2e-3));
    CHECK(subsidy_money_proportional(b, 0.0, 0.5) == 0.0);
    CHECK_THROWS_AS(subsidy_money_proportional(b, 0.5, 0.0), std::domain_error);
}

TEST_CASE("flat subsidy money") {
    const Group1D b{Distribution::uniform(), CostFunction::linear(4), {0.3}};
    CHECK(subsidy_money_flat(b, 0.8, 0.0) == 0.0);
    CHECK(subsidy_money_flat(b, 0.8, 1.0) == Approx(0.375));
    // Floor clamps to 0: everyone below sigma is fully reimbursed.
    CHECK(subsidy_money_flat(b, 0.8, 5.0) == Approx(4.0 * 0.8 * 0.8 / 2.0));
}

TEST_CASE("subsidy money matches closed forms") {
    oracle::Rng rng(51);
    for (int i = 0; i < 500; ++i) {
        const double a = rng.uniform(1.0, 8.0), sigma = rng.uniform(), tau = rng.uniform(0.0, sigma);
        const Group1D b{Distribution::uniform(), CostFunction::linear(a), {tau}};
        const double beta = rng.uniform(0.05, 1.0), alpha = rng.uniform(0.0, 4.0);
        REQUIRE(std::abs(subsidy_money_proportional(b, sigma, beta) - oracle::spend_prop_linear(a, sigma, beta)) <=
                1e-8);
        REQUIRE(std::abs(subsidy_money_flat(b, sigma, alpha) - oracle::spend_flat_linear(a, sigma, alpha)) <= 1e-8);
        REQUIRE(std::abs(payoff_integral(Scenario(linear_params(a, a + 1, tau, tau)), GroupId::B, 0.0, 1.0, {sigma},
                                         SubsidyPlan::proportional(beta)) -
                         oracle::welfare_prop_linear(a + 1, sigma, beta)) <= 1e-8);
    }
    CHECK(subsidy_money(Group1D{}, 0.5, SubsidyPlan::proportional(1.0)) == 0.0);
    CHECK(subsidy_money(Group1D{}, 0.5, SubsidyPlan::flat(0.0)) == 0.0);
}

TEST_CASE("group_welfare examples") {
    const Scenario s2(example2_params());
    const auto none = SubsidyPlan::none();
    CHECK(group_welfare(s2, {0.55}, none, GroupId::B) == Approx(0.575));
    CHECK(group_welfare(s2, {0.0}, none, GroupId::B) == 1.0);
    CHECK(group_welfare(s2, {0.0}, none, GroupId::A) == 1.0);
    CHECK(group_welfare(s2, {std::nextafter(1.0, 2.0)}, none, GroupId::B) == 0.0);
    // Group A is never subsidised.
    CHECK(group_welfare(s2, {0.6}, SubsidyPlan::proportional(0.5), GroupId::A) ==
          Approx(group_welfare(s2, {0.6}, none, GroupId::A)));
    CHECK(candidate_payoff(s2, GroupId::B, 0.5, {0.55}, none) == Approx(0.8));
    CHECK(candidate_payoff(s2, GroupId::B, 0.5, {0.55}, none, false) == 0.0);
    CHECK(candidate_payoff(s2, GroupId::B, 0.6, {0.55}, none, false) == 1.0);
}

TEST_CASE("welfare is non-increasing in sigma") {
    oracle::Rng rng(52);
    for (int i = 0; i < 60; ++i) {
        const Scenario s(oracle::random_scenario(rng));
        const auto plan = oracle::random_plan(rng);
        for (GroupId g : {GroupId::A, GroupId::B}) {
            double prev = 2.0;
            for (int k = 0; k <= 40; ++k) {
                const double w = group_welfare(s, {k / 40.0}, plan, g);
                REQUIRE(w <= prev + 1e-9);
                REQUIRE(w >= 0.0);
                REQUIRE(w <= 1.0);
                prev = w;
            }
        }
    }
}

TEST_CASE("welfare and spend agree with simulation") {
    oracle::Rng rng(53);
    for (int i = 0; i < 4; ++i) {
        const Scenario s(oracle::random_scenario(rng));
        const auto plan = oracle::random_plan(rng);
        const double sigma = rng.uniform(0.2, 0.9);
        const auto sim = oracle::simulate_1d(s, sigma, plan, 200'000, 200 + i);
        auto close = [](double v, const oracle::Stat& st) { return std::abs(v - st.mean) <= std::max(3.0 * st.se, 1e-12); };
        CHECK(close(group_welfare(s, {sigma}, plan, GroupId::A), sim.welfare_a));
        CHECK(close(group_welfare(s, {sigma}, plan, GroupId::B), sim.welfare_b));
        CHECK(close(learner_cost_1d(s, {sigma}, plan).subsidy_money, sim.spend));
    }
}

TEST_CASE("welfare_nonmanipulation") {
    auto r = welfare_nonmanipulation(example3());
    CHECK(r.classifier.sigma == Approx(0.35).epsilon(1e-6));
    CHECK(r.regime == Regime::NoManipulation);
    CHECK(r.welfare_b == Approx(0.65));
    CHECK(r.welfare_a == Approx(0.65));

    const Scenario shared(linear_params(3, 4, 0.4, 0.4));
    r = welfare_nonmanipulation(shared);
    CHECK(r.classifier.sigma == 0.4);
    CHECK(r.penalty.total == 0.0);

    auto p = example2_params();
    p.c_fp = 0.0;
    r = welfare_nonmanipulation(Scenario(p));
    CHECK(r.classifier.sigma == 0.3);
}

TEST_CASE("optimize_subsidy on Example 1") {
    const auto s = example1();
    const auto prop = optimize_subsidy(s, SubsidyFamily::Proportional);
    CHECK(prop.threshold.sigma == Approx(0.546).epsilon(2e-3));
    CHECK(prop.plan.beta() == Approx(0.558).epsilon(4e-3));
    CHECK(prop.penalty.total <= equilibrium_threshold(s, SubsidyPlan::none()).penalty.total);
    const auto flat = optimize_subsidy(s, SubsidyFamily::Flat, quick);
    CHECK(flat.plan.kind() != SubsidyPlan::Kind::Proportional);
    CHECK(flat.penalty.total <= equilibrium_threshold(s, SubsidyPlan::none()).penalty.total);
}

TEST_CASE("expensive subsidies are never used") {
    ScenarioParams p = example1().params();
    p.lambda = 1e6;
    const Scenario s(p);
    const auto base = equilibrium_threshold(s, SubsidyPlan::none());
    const auto prop = optimize_subsidy(s, SubsidyFamily::Proportional, quick);
    CHECK(prop.plan.is_trivial());
    CHECK(prop.threshold.sigma == Approx(base.threshold.sigma));
    const auto flat = optimize_subsidy(s, SubsidyFamily::Flat, quick);
    CHECK(flat.plan.is_trivial());
    CHECK(flat.threshold.sigma == Approx(base.threshold.sigma));
}

TEST_CASE("subsidy never raises the learner penalty") {
    oracle::Rng rng(54);
    for (int i = 0; i < 12; ++i) {
        const Scenario s(oracle::random_scenario(rng));
        const double base = equilibrium_threshold(s, SubsidyPlan::none()).penalty.total;
        for (auto fam : {SubsidyFamily::Proportional, SubsidyFamily::Flat}) {
            const auto opt = optimize_subsidy(s, fam, quick);
            REQUIRE(opt.penalty.total <= base + 1e-12);
            REQUIRE(opt.penalty.total == Approx(learner_cost_1d(s, opt.threshold, opt.plan).total));
        }
    }
}

TEST_CASE("compare_regimes on Example 1") {
    CompareOptions opts;
    opts.delta_grid = 2000;
    const auto cmp = compare_regimes(example1(), opts);
    REQUIRE(cmp.reports.size() == 4);
    CHECK(cmp.get(Regime::Manipulation).classifier.sigma == Approx(0.398).epsilon(1e-3));
    CHECK(cmp.paradox_proportional);
    const auto& prop = cmp.get(Regime::ProportionalSubsidy);
    REQUIRE(prop.deltas);
    CHECK(prop.deltas->improved_b == 0);
    CHECK(prop.deltas->declined_b > 0);
    CHECK(prop.deltas->declined_a > 0);
    CHECK(prop.deltas->baseline == Regime::Manipulation);
    CHECK(cmp.get(Regime::Manipulation).deltas->baseline == Regime::NoManipulation);

    // Cell means integrate to the welfare differences.
    const auto& manip = cmp.get(Regime::Manipulation);
    for (const auto* r : {&cmp.get(Regime::ProportionalSubsidy), &cmp.get(Regime::FlatSubsidy)}) {
        CHECK(std::abs(cell_sum(r->deltas->a) - (r->welfare_a - manip.welfare_a)) <= 1e-6);
        CHECK(std::abs(cell_sum(r->deltas->b) - (r->welfare_b - manip.welfare_b)) <= 1e-6);
    }
    const auto& none = cmp.get(Regime::NoManipulation);
    CHECK(std::abs(cell_sum(manip.deltas->a) - (manip.welfare_a - none.welfare_a)) <= 1e-6);
    CHECK(std::abs(cell_sum(manip.deltas->b) - (manip.welfare_b - none.welfare_b)) <= 1e-6);
    CHECK_THROWS_AS(RegimeComparison{}.get(Regime::FlatSubsidy), std::out_of_range);
}

TEST_CASE("Example 3 orderings at the published subsidy point") {
    const auto s = example3();
    const double sigma_a = sigma_boundary(s.a(), SubsidyPlan::none()).sigma;
    CompareOptions opts;
    opts.delta_grid = 500;
    const auto plan = SubsidyPlan::proportional(0.806);
    opts.proportional_point = SubsidyOptimum{{sigma_a}, plan, learner_cost_1d(s, {sigma_a}, plan)};
    opts.subsidy = quick;
    const auto cmp = compare_regimes(s, opts);
    const auto& none = cmp.get(Regime::NoManipulation);
    const auto& manip = cmp.get(Regime::Manipulation);
    const auto& prop = cmp.get(Regime::ProportionalSubsidy);
    CHECK(manip.classifier.sigma == Approx(0.64).epsilon(3e-3));
    CHECK(none.welfare_a > manip.welfare_a);
    CHECK(manip.welfare_a > prop.welfare_a);
    CHECK(none.welfare_b > manip.welfare_b);
    CHECK(manip.welfare_b > prop.welfare_b);
    CHECK(none.learner_utility > prop.learner_utility);
    CHECK(prop.learner_utility > manip.learner_utility);
    CHECK(admission_floor(s.b(), sigma_a, plan) == Approx(0.4231).epsilon(1e-3));
}

TEST_CASE("symmetric groups tie") {
    const Scenario s(linear_params(3, 3, 0.4, 0.4));
    CompareOptions opts;
    opts.delta_grid = 200;
    opts.subsidy = quick;
    const auto cmp = compare_regimes(s, opts);
    CHECK_FALSE(cmp.paradox_proportional);
    CHECK_FALSE(cmp.paradox_flat);
    for (const auto& r : cmp.reports) CHECK(r.penalty.errors() == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("enum names") {
    CHECK(to_string(Regime::NoManipulation) == "no_manipulation");
    CHECK(to_string(Regime::FlatSubsidy) == "flat_subsidy");
    CHECK(to_string(GroupId::B) == "B");
    CHECK(to_string(SubsidyFamily::Proportional) == "proportional");
}
