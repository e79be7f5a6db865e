#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace scg {

/// Thrown when a cost function, distribution or scenario violates its
/// construction-time contract.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative numerical routine fails to meet its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace cost {

struct Linear {
    double slope = 1.0;
};

/// c(x) = sqrt_coeff * sqrt(x) + lin_coeff * x
struct SqrtLinear {
    double sqrt_coeff = 0.0;
    double lin_coeff = 0.0;
};

struct PowerTerm {
    double coeff = 0.0;
    double exponent = 1.0;
};

/// c(x) = sum_j coeff_j * x^exponent_j
struct PowerSum {
    std::vector<PowerTerm> terms;
};

/// Linear interpolation through (x_j, c_j); x spans [0,1].
struct Tabulated {
    std::vector<double> xs;
    std::vector<double> values;
};

using Family = std::variant<Linear, SqrtLinear, PowerSum, Tabulated>;

}  // namespace cost

/// A strictly increasing, non-negative manipulation cost on [0,1].
///
/// Instances are immutable. The factories reject parameters that would make
/// the function flat anywhere on [0,1], so invert() is single-valued.
class CostFunction {
public:
    static CostFunction linear(double slope);
    static CostFunction sqrt_linear(double sqrt_coeff, double lin_coeff);
    static CostFunction power_sum(std::vector<cost::PowerTerm> terms);
    static CostFunction tabulated(std::vector<double> xs, std::vector<double> values);

    /// c(x) for x in [0,1]; throws std::domain_error outside.
    double operator()(double x) const;

    /// The x in [0,1] with |c(x) - v| <= 1e-9, by bisection.
    /// Throws std::domain_error when v lies outside [c(0), c(1)].
    double invert(double v) const;

    /// Interior points where c is not smooth (tabulated knots).
    std::vector<double> kinks() const;

    double at_zero() const { return c0_; }
    double at_one() const { return c1_; }

    const cost::Family& family() const { return family_; }
    std::string describe() const;

private:
    explicit CostFunction(cost::Family family);
    double evaluate(double x) const;

    cost::Family family_;
    double c0_ = 0.0;
    double c1_ = 0.0;
};

double eval(const CostFunction& c, double x);
double invert(const CostFunction& c, double v);

/// Who pays for a group-B candidate's manipulation.
class SubsidyPlan {
public:
    enum class Kind { None, Proportional, Flat };

    static SubsidyPlan none() { return SubsidyPlan{Kind::None, 0.0}; }
    /// Candidate pays beta * raw cost; beta in (0,1].
    static SubsidyPlan proportional(double beta);
    /// Candidate pays max{0, raw - alpha}; alpha >= 0.
    static SubsidyPlan flat(double alpha);

    Kind kind() const { return kind_; }
    double parameter() const { return value_; }
    double beta() const;
    double alpha() const;

    /// Largest raw cost a candidate accepts for a positive classification.
    double budget() const;
    /// Share of a raw manipulation cost borne by the candidate.
    double candidate_share(double raw_cost) const;
    /// Share of a raw manipulation cost paid by the learner.
    double learner_share(double raw_cost) const;
    /// True when the plan changes nothing relative to no subsidy.
    bool is_trivial() const;

    std::string describe() const;

    friend bool operator==(const SubsidyPlan&, const SubsidyPlan&) = default;

private:
    SubsidyPlan(Kind kind, double value) : kind_(kind), value_(value) {}
    Kind kind_;
    double value_;
};

/// Candidate-borne cost of moving x -> y (y >= x) under plan.
double manipulation_cost(const CostFunction& c, double x, double y, const SubsidyPlan& plan);

struct CostConditionViolation {
    double x = 0.0;
    double y = 0.0;
    double margin = 0.0;  // (c_A(y)-c_A(x)) - (c_B(y)-c_B(x)) > 0
};

struct CostConditionReport {
    bool holds = true;
    std::size_t pairs_checked = 0;
    std::size_t violation_count = 0;
    double worst_margin = 0.0;
    std::vector<CostConditionViolation> violations;  // capped sample, worst first
};

/// Checks c_A(y) - c_A(x) <= c_B(y) - c_B(x) for all grid pairs y >= x.
CostConditionReport check_cost_condition(const CostFunction& cost_a, const CostFunction& cost_b,
                                         std::size_t grid_resolution = 512);

/// Per-coordinate linear manipulation costs c(x) = sum_i coeffs_i x_i.
struct LinearCostVector {
    std::vector<double> coeffs;

    std::size_t dim() const { return coeffs.size(); }
    void validate() const;
};

}  // namespace scg
