#pragma once

#include <cstddef>
#include <string>

#include "scg/cost_model.hpp"
#include "scg/population.hpp"

namespace scg {

/// f(y) = 1 iff y >= sigma. sigma > 1 rejects everyone; sigma <= 0 admits everyone.
struct Threshold1D {
    double sigma = 0.0;
    bool admits(double y) const { return y >= sigma; }
};

struct BoundaryPoint {
    double sigma = 0.0;
    /// c(tau) + budget exceeded c(1); sigma was clamped to 1.
    bool saturated = false;
};

/// Largest feature reachable from tau at candidate-borne cost 1.
BoundaryPoint sigma_boundary(const Group1D& g, const SubsidyPlan& plan);

/// Minimum unmanipulated feature that can present y: max{0, c^-1(c(y) - budget)}.
double ell(const CostFunction& c, double y, const SubsidyPlan& plan);
double ell(const Group1D& g, double y, const SubsidyPlan& plan);

/// Lowest unmanipulated feature admitted (directly or after manipulation)
/// by threshold sigma; +inf when sigma > 1.
double admission_floor(const Group1D& g, double sigma, const SubsidyPlan& plan);

struct BestResponse1D {
    double y = 0.0;
    double paid_cost = 0.0;
    double payoff = 0.0;
    bool moved = false;
};

BestResponse1D best_response_1d(const Group1D& g, double x, Threshold1D t, const SubsidyPlan& plan);

/// Learner penalty decomposition. Error terms already carry C * p weights;
/// subsidy_money is the population-level spend p_B * cost(f, plan).
struct Penalty {
    double fn_b = 0.0;
    double fp_a = 0.0;
    double fn_a = 0.0;  // non-zero only for thresholds above sigma_A
    double fp_b = 0.0;  // non-zero only for thresholds below sigma_B(plan)
    double subsidy_money = 0.0;
    double total = 0.0;
    bool dominated = false;

    double errors() const { return fn_b + fp_a + fn_a + fp_b; }
};

struct UndominatedInterval {
    BoundaryPoint lo;  // sigma_B under the plan
    BoundaryPoint hi;  // sigma_A (group A is never subsidised)

    bool contains(double sigma, double slack = 1e-12) const {
        return sigma >= lo.sigma - slack && sigma <= hi.sigma + slack;
    }
};

UndominatedInterval undominated_interval(const Scenario& s, const SubsidyPlan& plan);

Penalty learner_cost_1d(const Scenario& s, Threshold1D t, const SubsidyPlan& plan);

/// Unmanipulated-feature error bands [lo, hi) for each group.
struct ErrorIntervals {
    double fp_a_lo = 0.0, fp_a_hi = 0.0;
    double fn_b_lo = 0.0, fn_b_hi = 0.0;
};

ErrorIntervals error_intervals(const Scenario& s, Threshold1D t, const SubsidyPlan& plan);

struct SearchOptions {
    std::size_t grid = 2048;
    double refine_tol = 1e-7;
};

struct EquilibriumResult {
    Threshold1D threshold;
    Penalty penalty;
    UndominatedInterval interval;
};

/// argmin of learner_cost_1d over [sigma_B(plan), sigma_A]: dense grid then
/// golden-section refinement in the winning cell; ties go to the smaller sigma.
EquilibriumResult equilibrium_threshold(const Scenario& s, const SubsidyPlan& plan, SearchOptions opts = {});

/// Threshold in [sigma_B(plan), sigma_A] where p_B * FN mass equals p_A * FP mass.
EquilibriumResult equalize_errors_threshold(const Scenario& s, const SubsidyPlan& plan);

/// Threshold chosen by the scenario's learner mode.
EquilibriumResult learner_threshold(const Scenario& s, const SubsidyPlan& plan, SearchOptions opts = {});

enum class CurvaturePrediction { SigmaB, SigmaA, Indifferent, NotApplicable };

std::string to_string(CurvaturePrediction p);

/// Closed-form equilibrium location for proportional costs under uniform,
/// symmetric settings; NotApplicable otherwise.
CurvaturePrediction curvature_prediction(const Scenario& s);

}  // namespace scg
