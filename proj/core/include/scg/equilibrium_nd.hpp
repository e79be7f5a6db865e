#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scg/cost_model.hpp"
#include "scg/population.hpp"

namespace scg {

/// f(y) = 1 iff g . y >= g0, with g >= 0 and at least one g_i > 0.
struct Hyperplane {
    std::vector<double> g;
    double g0 = 0.0;

    double score(std::span<const double> y) const;
    bool admits(std::span<const double> y) const { return score(y) >= g0; }
    void validate() const;
};

/// Forward simplex: points reachable from the anchor within budget.
/// Backward simplex: origins that could have produced the anchor.
/// Both are clipped to the unit box.
struct Simplex {
    enum class Direction { Forward, Backward };

    std::vector<double> anchor;
    double budget = 1.0;
    LinearCostVector costs;
    Direction direction = Direction::Forward;

    /// Vertex i (1..d) before clipping; vertex 0 is the anchor.
    std::vector<double> raw_vertex(std::size_t i) const;
    /// Vertex clipped to [0,1]^d.
    std::vector<double> vertex(std::size_t i) const;
    bool contains(std::span<const double> point, double slack = 1e-12) const;
};

struct BestResponseND {
    std::vector<double> y;
    double paid_cost = 0.0;
    double payoff = 0.0;
    /// Coordinates with y_i > x_i.
    std::vector<std::size_t> moved_components;
    /// The cheapest direction hit the box edge, so the move spilled into
    /// lower-ratio coordinates.
    bool saturated = false;
};

/// Indices of argmax_i g_i / c_i (exact ties).
std::vector<std::size_t> best_ratio_directions(std::span<const double> g, const LinearCostVector& costs);

/// Payoff-maximising manipulation against h. Reaches the hyperplane at minimum
/// raw cost, filling coordinates in descending g_i/c_i order (smallest index
/// first on ties) and respecting the unit box; moves iff that raw cost fits the
/// plan's budget.
BestResponseND best_response_nd(std::span<const double> x, const LinearCostVector& costs, const Hyperplane& h,
                                const SubsidyPlan& plan = SubsidyPlan::none());

/// g = w, g0 = tau + budget * max_i(w_i / c_i).
Hyperplane perfect_classifier(const GroupND& group, double budget = 1.0);

/// True when every true positive of `group` reaches `perfect_classifier(group, budget)`
/// along its best-ratio coordinate without leaving the unit box (g0 <= w_k).
bool perfect_classifier_interior(const GroupND& group, double budget = 1.0);

/// g0 - budget * max_i(g_i / c_i): score above which a candidate can afford
/// a positive classification.
double effective_level(const Hyperplane& h, const LinearCostVector& costs, double budget = 1.0);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct PenaltyND {
    Estimate fn_b;
    Estimate fp_a;
    Estimate fn_a;  // zero for undominated classifiers
    Estimate fp_b;  // zero for undominated classifiers
    Estimate subsidy_money;
    Estimate total;
    std::size_t samples = 0;
    bool dominated = false;
};

struct MonteCarloOptions {
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 20240611;
};

/// Monte Carlo estimate of the d-D learner penalty using effective levels
/// for each group.
PenaltyND learner_cost_nd(const ScenarioND& s, const Hyperplane& h, const SubsidyPlan& plan,
                          MonteCarloOptions opts = {});

/// Offsets [g0_B, g0_A] of the two groups' perfect classifiers along a shared
/// direction w (requires w_A = w_B); group B's budget follows the plan.
std::pair<double, double> undominated_offsets(const ScenarioND& s, const SubsidyPlan& plan = SubsidyPlan::none());

struct OffsetSweepRow {
    double g0 = 0.0;
    PenaltyND penalty;
};

struct OffsetSweep {
    Hyperplane best;
    PenaltyND penalty;
    std::vector<OffsetSweepRow> rows;
};

/// Evaluates learner_cost_nd at `steps` offsets in [lo, hi] along direction g
/// (common random numbers across offsets); best = smallest total, ties to the
/// smaller offset.
OffsetSweep sweep_offsets_nd(const ScenarioND& s, const std::vector<double>& g, double lo, double hi,
                             std::size_t steps, const SubsidyPlan& plan, MonteCarloOptions opts = {});

/// Reduction of a fixed-direction classifier to a 1-D linear game on the
/// score g . x.
struct ReducedGame {
    std::vector<double> g;
    std::size_t k = 0;  // canonical best-ratio coordinate
    double slope = 0.0; // equivalent 1-D cost per unit score: c_k / g_k

    double score(std::span<const double> x) const;
};

ReducedGame reduce_to_1d(const Hyperplane& h, const LinearCostVector& costs);

/// Whether the group-A perfect classifier strictly improves on f as a
/// dominance repair: f admits some true negative of group A that f_1^A rejects,
/// or rejects some true positive f_1^A admits (checked on a grid of
/// unmanipulated candidates under best responses).
struct DominanceDiagnostic {
    std::size_t fp_a_removed = 0;
    std::size_t fn_a_removed = 0;
    bool strictly_improves = false;
};

DominanceDiagnostic dominance_repair_diagnostic(const GroupND& group_a, const Hyperplane& f,
                                                std::size_t per_axis = 21);

}  // namespace scg
