#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scg/cost_model.hpp"
#include "scg/equilibrium_1d.hpp"
#include "scg/population.hpp"

namespace scg {

enum class Regime { NoManipulation, Manipulation, ProportionalSubsidy, FlatSubsidy };
enum class GroupId { A, B };
enum class SubsidyFamily { Proportional, Flat };

std::string to_string(Regime r);
std::string to_string(GroupId g);
std::string to_string(SubsidyFamily f);

struct SubsidySearchOptions {
    std::size_t sigma_grid = 512;
    std::size_t param_grid = 512;
    double refine_tol = 1e-9;
    /// Alternating axis-wise refinement passes after the grid.
    int refine_rounds = 3;
};

struct SubsidyOptimum {
    Threshold1D threshold;
    SubsidyPlan plan = SubsidyPlan::none();
    Penalty penalty;
};

/// Joint argmin of learner_cost_1d over (sigma, subsidy parameter). sigma is
/// searched inside [sigma_B(plan), sigma_A] for each parameter value; the
/// parameter ranges from "no subsidy" to the level where sigma_B(plan) meets
/// sigma_A. Ties go to the smaller spend, then the smaller sigma.
SubsidyOptimum optimize_subsidy(const Scenario& s, SubsidyFamily family, SubsidySearchOptions opts = {});

/// Candidate payoff under threshold sigma: 1 when admitted without moving,
/// 1 - borne cost when manipulating, 0 otherwise. `manipulation` = false
/// models the non-manipulation game. Group A is never subsidised.
double candidate_payoff(const Scenario& s, GroupId g, double x, Threshold1D t, const SubsidyPlan& plan,
                        bool manipulation = true);

/// Integral of candidate_payoff against the group density over [lo, hi].
double payoff_integral(const Scenario& s, GroupId g, double lo, double hi, Threshold1D t, const SubsidyPlan& plan,
                       bool manipulation = true);

/// Average utility of a group: payoff_integral over [0,1].
double group_welfare(const Scenario& s, Threshold1D t, const SubsidyPlan& plan, GroupId g);

struct DeltaCell {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double mass = 0.0;
    /// Payoff change at the cell midpoint.
    double point_delta = 0.0;
    /// Density-weighted mean payoff change over the cell.
    double mean_delta = 0.0;
};

/// Per-candidate payoff change of a regime relative to a baseline regime.
struct DeltaTable {
    Regime baseline = Regime::Manipulation;
    std::vector<DeltaCell> a;
    std::vector<DeltaCell> b;
    std::size_t improved_a = 0, declined_a = 0;
    std::size_t improved_b = 0, declined_b = 0;
    double max_gain = 0.0;
    double max_loss = 0.0;
};

struct RegimeReport {
    Regime regime = Regime::Manipulation;
    Threshold1D classifier;
    SubsidyPlan subsidy = SubsidyPlan::none();
    Penalty penalty;
    double welfare_a = 0.0;
    double welfare_b = 0.0;
    /// 1 - misclassification penalty (spend excluded).
    double learner_utility = 0.0;
    std::optional<DeltaTable> deltas;
};

/// Report for a fixed classifier and plan.
RegimeReport evaluate_regime(const Scenario& s, Regime regime, Threshold1D t, const SubsidyPlan& plan);

/// Non-manipulation game: threshold on unmanipulated features chosen by the
/// scenario's learner mode inside [tau_B, tau_A].
RegimeReport welfare_nonmanipulation(const Scenario& s, std::size_t grid = 2048);

struct CompareOptions {
    SearchOptions search;
    SubsidySearchOptions subsidy;
    /// Feature grid for the per-candidate delta tables.
    std::size_t delta_grid = 10'000;
    double delta_tol = 1e-9;
    /// Use these points instead of the joint optimum (e.g. a published equilibrium).
    std::optional<SubsidyOptimum> proportional_point;
    std::optional<SubsidyOptimum> flat_point;
};

struct RegimeComparison {
    std::vector<RegimeReport> reports;  // NoManipulation, Manipulation, Proportional, Flat
    bool paradox_proportional = false;
    bool paradox_flat = false;
    bool manipulation_regret = false;

    const RegimeReport& get(Regime r) const;
};

/// Payoff deltas of `other` against `base` on a uniform feature grid, plus
/// checks at the payoff discontinuities of both regimes.
DeltaTable delta_table(const Scenario& s, const RegimeReport& base, const RegimeReport& other, std::size_t grid,
                       double tol);

RegimeComparison compare_regimes(const Scenario& s, const CompareOptions& opts = {});

}  // namespace scg
