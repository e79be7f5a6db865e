#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scg/cost_model.hpp"

namespace scg {

/// Feature distribution on [0,1]: uniform, or a piecewise-linear density
/// through user knots (normalised to unit mass at construction).
class Distribution {
public:
    enum class Kind { Uniform01, PiecewiseLinear };

    static Distribution uniform();
    /// Knots are (x, density) pairs with x strictly increasing from 0 to 1.
    static Distribution piecewise_linear(std::vector<std::pair<double, double>> knots);

    Kind kind() const { return kind_; }
    bool is_uniform() const { return kind_ == Kind::Uniform01; }

    double density(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;
    /// Interior points where the density has kinks (for quadrature splitting).
    std::span<const double> breakpoints() const { return breaks_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

    std::string describe() const;

private:
    Distribution() = default;
    Kind kind_ = Kind::Uniform01;
    std::vector<std::pair<double, double>> knots_;
    std::vector<double> cum_;  // CDF at each knot
    std::vector<double> breaks_;
};

/// P[lo <= x < hi] under d. Throws std::domain_error when lo > hi or the
/// interval leaves [0,1].
double interval_mass(const Distribution& d, double lo, double hi);

/// interval_mass with both ends clamped into [0,1]; empty when hi <= lo.
double clamped_mass(const Distribution& d, double lo, double hi);

/// 1-D true labelling rule h(x) = 1 iff x >= tau.
struct TrueRule1D {
    double tau = 0.0;
    bool label(double x) const { return x >= tau; }
};

/// d-D true labelling rule h(x) = 1 iff w . x >= tau.
struct TrueRuleND {
    std::vector<double> weights;
    double tau = 0.0;

    double score(std::span<const double> x) const;
    bool label(std::span<const double> x) const { return score(x) >= tau; }
};

struct Group1D {
    Distribution distribution = Distribution::uniform();
    CostFunction cost = CostFunction::linear(1.0);
    TrueRule1D rule;

    double tau() const { return rule.tau; }
    /// Density and cost kinks, for splitting quadrature.
    std::vector<double> breakpoints() const;
};

/// d-D group: independent marginals, linear costs, linear true rule.
struct GroupND {
    std::vector<Distribution> marginals;
    LinearCostVector costs;
    TrueRuleND rule;

    std::size_t dim() const { return costs.dim(); }
};

/// How the learner picks a threshold inside the undominated interval.
enum class LearnerMode {
    MinimizePenalty,
    /// Equalise p-weighted false-negative and false-positive masses.
    EqualizeErrors,
};

struct ScenarioParams {
    Group1D group_a;
    Group1D group_b;
    double p_a = 0.5;
    double p_b = 0.5;
    double c_fp = 1.0;
    double c_fn = 1.0;
    double lambda = 0.0;
    LearnerMode mode = LearnerMode::MinimizePenalty;
};

struct ScenarioNDParams {
    GroupND group_a;
    GroupND group_b;
    double p_a = 0.5;
    double p_b = 0.5;
    double c_fp = 1.0;
    double c_fn = 1.0;
    double lambda = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string reason) {
        ok = false;
        failures.push_back(std::move(reason));
    }
    std::string summary() const;
};

ValidationReport validate_scenario(const ScenarioParams& s);
ValidationReport validate_scenario(const ScenarioNDParams& s);

/// A validated two-group 1-D scenario. Construction throws ValidationError
/// carrying the report's reasons.
class Scenario {
public:
    explicit Scenario(ScenarioParams params);

    const ScenarioParams& params() const { return p_; }
    const Group1D& a() const { return p_.group_a; }
    const Group1D& b() const { return p_.group_b; }
    double p_a() const { return p_.p_a; }
    double p_b() const { return p_.p_b; }
    double c_fp() const { return p_.c_fp; }
    double c_fn() const { return p_.c_fn; }
    double lambda() const { return p_.lambda; }
    LearnerMode mode() const { return p_.mode; }

private:
    ScenarioParams p_;
};

class ScenarioND {
public:
    explicit ScenarioND(ScenarioNDParams params);

    const ScenarioNDParams& params() const { return p_; }
    const GroupND& a() const { return p_.group_a; }
    const GroupND& b() const { return p_.group_b; }
    std::size_t dim() const { return p_.group_a.dim(); }

private:
    ScenarioNDParams p_;
};

}  // namespace scg
