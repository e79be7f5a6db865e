#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "scg/cost_model.hpp"

using namespace scg;
using doctest::Approx;

TEST_CASE("eval matches family formulas") {
    CHECK(CostFunction::sqrt_linear(12, 0)(0.3) == Approx(12.0 * std::sqrt(0.3)).epsilon(1e-15));
    CHECK(CostFunction::sqrt_linear(12, 0)(0.3) == Approx(6.5727).epsilon(1e-5));
    CHECK(CostFunction::linear(4)(0.25) == 1.0);
    CHECK(CostFunction::power_sum({{2.0, 0.5}, {1.0, 3.0}})(0.0) == 0.0);
    CHECK(CostFunction::sqrt_linear(8, 1)(0.0) == 0.0);
    CHECK(eval(CostFunction::linear(3), 0.5) == 1.5);
    CHECK_THROWS_AS(CostFunction::linear(1)(1.5), std::domain_error);
    CHECK_THROWS_AS(CostFunction::linear(1)(-0.1), std::domain_error);
}

TEST_CASE("tabulated cost interpolates linearly") {
    auto c = CostFunction::tabulated({0.0, 0.5, 1.0}, {0.0, 1.0, 4.0});
    CHECK(c(0.25) == Approx(0.5));
    CHECK(c(0.75) == Approx(2.5));
    CHECK(c.invert(2.5) == Approx(0.75).epsilon(1e-9));
    CHECK(c.kinks() == std::vector<double>{0.5});
}

TEST_CASE("factories reject flat or decreasing costs") {
    CHECK_THROWS_AS(CostFunction::linear(0.0), ValidationError);
    CHECK_THROWS_AS(CostFunction::linear(-1.0), ValidationError);
    CHECK_THROWS_AS(CostFunction::sqrt_linear(0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(CostFunction::tabulated({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(CostFunction::tabulated({0.0, 1.0}, {1.0, 0.5}), ValidationError);
    CHECK_THROWS_AS(CostFunction::power_sum({{-1.0, 2.0}}), ValidationError);
}

TEST_CASE("invert examples") {
    CHECK(CostFunction::linear(4).invert(2.2) == Approx(0.55).epsilon(1e-9));
    auto cb = CostFunction::sqrt_linear(12, 0);
    CHECK(cb.invert(cb(0.3) + 1.0) == Approx(0.398).epsilon(1e-3));
    auto ca = CostFunction::sqrt_linear(8, 1);
    CHECK(ca.invert(ca(0.4) + 1.0) == Approx(0.546).epsilon(1e-3));
    CHECK_THROWS_AS(CostFunction::linear(4).invert(4.5), std::domain_error);
    CHECK_THROWS_AS(CostFunction::linear(4).invert(-0.1), std::domain_error);
}

TEST_CASE("invert and eval round trip on random probes") {
    oracle::Rng rng(11);
    std::vector<CostFunction> fams{CostFunction::linear(3.7), CostFunction::sqrt_linear(8, 1),
                                   CostFunction::sqrt_linear(12, 0),
                                   CostFunction::power_sum({{2.0, 0.5}, {1.5, 2.0}}),
                                   CostFunction::tabulated({0.0, 0.2, 0.7, 1.0}, {0.0, 0.1, 2.0, 2.5})};
    for (const auto& c : fams) {
        for (int i = 0; i < 1000; ++i) {
            const double x = rng.uniform();
            REQUIRE(std::abs(c.invert(c(x)) - x) <= 1e-8);
            const double v = rng.uniform(c.at_zero(), c.at_one());
            REQUIRE(std::abs(c(c.invert(v)) - v) <= 1e-9);
        }
    }
}

TEST_CASE("manipulation_cost examples") {
    auto c = CostFunction::linear(4);
    CHECK(manipulation_cost(c, 0.35, 0.55, SubsidyPlan::none()) == Approx(0.8));
    CHECK(manipulation_cost(c, 0.3, 0.5515, SubsidyPlan::proportional(0.994)) == Approx(0.994 * 4 * 0.2515));
    CHECK(manipulation_cost(c, 0.3, 0.5515, SubsidyPlan::proportional(0.994)) == Approx(0.99996).epsilon(1e-5));
    CHECK(manipulation_cost(c, 0.3, 0.8, SubsidyPlan::flat(0.5)) == Approx(1.5));
    CHECK(manipulation_cost(c, 0.3, 0.4, SubsidyPlan::flat(0.5)) == 0.0);
    for (const auto& p : {SubsidyPlan::none(), SubsidyPlan::proportional(0.3), SubsidyPlan::flat(2.0)}) {
        CHECK(manipulation_cost(c, 0.42, 0.42, p) == 0.0);
    }
    CHECK_THROWS(manipulation_cost(c, 0.5, 0.4, SubsidyPlan::none()));
}

TEST_CASE("manipulation_cost properties on random triples") {
    oracle::Rng rng(12);
    auto c = CostFunction::sqrt_linear(5, 2);
    for (int i = 0; i < 2000; ++i) {
        double x = rng.uniform(), y = rng.uniform();
        if (y < x) std::swap(x, y);
        const double y2 = y + rng.uniform(0.0, 1.0 - y);
        const double x2 = rng.uniform(0.0, x);
        const double alpha = rng.uniform(0.0, 3.0);
        const auto none = SubsidyPlan::none();
        REQUIRE(manipulation_cost(c, x, y, SubsidyPlan::proportional(1.0)) == manipulation_cost(c, x, y, none));
        REQUIRE(manipulation_cost(c, x, y2, none) >= manipulation_cost(c, x, y, none));
        REQUIRE(manipulation_cost(c, x2, y, none) >= manipulation_cost(c, x, y, none));
        const double flat = manipulation_cost(c, x, y, SubsidyPlan::flat(alpha));
        REQUIRE(flat >= 0.0);
        REQUIRE(flat >= manipulation_cost(c, x, y, none) - alpha);
        REQUIRE(manipulation_cost(c, x, y, SubsidyPlan::flat(0.0)) == manipulation_cost(c, x, y, none));
    }
}

TEST_CASE("subsidy plans") {
    CHECK(SubsidyPlan::none().budget() == 1.0);
    CHECK(SubsidyPlan::proportional(0.5).budget() == 2.0);
    CHECK(SubsidyPlan::flat(0.25).budget() == 1.25);
    CHECK(SubsidyPlan::proportional(1.0).is_trivial());
    CHECK(SubsidyPlan::flat(0.0).is_trivial());
    CHECK_FALSE(SubsidyPlan::flat(0.1).is_trivial());
    CHECK_THROWS_AS(SubsidyPlan::proportional(0.0), ValidationError);
    CHECK_THROWS_AS(SubsidyPlan::proportional(1.2), ValidationError);
    CHECK_THROWS_AS(SubsidyPlan::flat(-0.1), ValidationError);
    const auto p = SubsidyPlan::flat(0.3);
    for (double raw : {0.0, 0.1, 0.3, 0.9}) CHECK(p.candidate_share(raw) + p.learner_share(raw) == Approx(raw));
}

TEST_CASE("cost condition check") {
    CHECK(check_cost_condition(CostFunction::sqrt_linear(8, 1), CostFunction::sqrt_linear(12, 0)).holds);
    CHECK(check_cost_condition(CostFunction::linear(3), CostFunction::linear(4)).holds);
    const auto r = check_cost_condition(CostFunction::linear(2), CostFunction::linear(1), 64);
    CHECK_FALSE(r.holds);
    CHECK(r.violation_count == 64 * 63 / 2);
    CHECK(r.worst_margin == Approx(1.0));
    CHECK(r.violations.size() <= 16);
    CHECK(r.violations.front().margin == Approx(1.0));
}
