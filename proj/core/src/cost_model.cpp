#include "scg/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scg/numerics.hpp"

namespace scg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

}  // namespace

CostFunction::CostFunction(cost::Family family) : family_(std::move(family)) {
    c0_ = evaluate(0.0);
    c1_ = evaluate(1.0);
}

CostFunction CostFunction::linear(double slope) {
    require(std::isfinite(slope) && slope > 0.0, "linear cost requires slope > 0");
    return CostFunction(cost::Linear{slope});
}

CostFunction CostFunction::sqrt_linear(double sqrt_coeff, double lin_coeff) {
    require(std::isfinite(sqrt_coeff) && std::isfinite(lin_coeff) && sqrt_coeff >= 0.0 && lin_coeff >= 0.0,
            "sqrt_linear cost requires non-negative coefficients");
    require(sqrt_coeff > 0.0 || lin_coeff > 0.0, "sqrt_linear cost is identically zero (flat)");
    return CostFunction(cost::SqrtLinear{sqrt_coeff, lin_coeff});
}

CostFunction CostFunction::power_sum(std::vector<cost::PowerTerm> terms) {
    require(!terms.empty(), "power_sum cost needs at least one term");
    bool any_positive = false;
    for (const auto& t : terms) {
        require(std::isfinite(t.coeff) && t.coeff >= 0.0, "power_sum coefficients must be >= 0");
        require(std::isfinite(t.exponent) && t.exponent > 0.0, "power_sum exponents must be > 0");
        any_positive = any_positive || t.coeff > 0.0;
    }
    require(any_positive, "power_sum cost is identically zero (flat)");
    return CostFunction(cost::PowerSum{std::move(terms)});
}

CostFunction CostFunction::tabulated(std::vector<double> xs, std::vector<double> values) {
    require(xs.size() >= 2 && xs.size() == values.size(), "tabulated cost needs >= 2 matching samples");
    require(xs.front() == 0.0 && xs.back() == 1.0, "tabulated cost grid must span exactly [0,1]");
    require(values.front() >= 0.0, "tabulated cost must be non-negative");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        require(xs[i] > xs[i - 1], "tabulated grid must be strictly increasing");
        require(values[i] > values[i - 1], "tabulated cost must be strictly increasing (flat segment)");
    }
    for (double v : values) require(std::isfinite(v), "tabulated cost values must be finite");
    return CostFunction(cost::Tabulated{std::move(xs), std::move(values)});
}

double CostFunction::evaluate(double x) const {
    return std::visit(overloaded{
                          [x](const cost::Linear& f) { return f.slope * x; },
                          [x](const cost::SqrtLinear& f) { return f.sqrt_coeff * std::sqrt(x) + f.lin_coeff * x; },
                          [x](const cost::PowerSum& f) {
                              double s = 0.0;
                              for (const auto& t : f.terms) s += t.coeff * std::pow(x, t.exponent);
                              return s;
                          },
                          [x](const cost::Tabulated& f) {
                              auto it = std::upper_bound(f.xs.begin(), f.xs.end(), x);
                              if (it == f.xs.end()) return f.values.back();
                              const auto j = static_cast<std::size_t>(it - f.xs.begin());
                              const double w = (x - f.xs[j - 1]) / (f.xs[j] - f.xs[j - 1]);
                              return f.values[j - 1] + w * (f.values[j] - f.values[j - 1]);
                          },
                      },
                      family_);
}

double CostFunction::operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("cost evaluated outside [0,1]: x=" + std::to_string(x));
    }
    return evaluate(x);
}

double CostFunction::invert(double v) const {
    if (!(v >= c0_ - numerics::kInvertTolerance && v <= c1_ + numerics::kInvertTolerance)) {
        throw std::domain_error("cost inverse requested outside [c(0), c(1)]: v=" + std::to_string(v));
    }
    return numerics::bisect_increasing([this](double x) { return evaluate(x); }, v, 0.0, 1.0);
}

std::string CostFunction::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const cost::Linear& f) { os << f.slope << "*x"; },
                   [&](const cost::SqrtLinear& f) { os << f.sqrt_coeff << "*sqrt(x) + " << f.lin_coeff << "*x"; },
                   [&](const cost::PowerSum& f) {
                       for (std::size_t i = 0; i < f.terms.size(); ++i) {
                           if (i) os << " + ";
                           os << f.terms[i].coeff << "*x^" << f.terms[i].exponent;
                       }
                   },
                   [&](const cost::Tabulated& f) { os << "tabulated(" << f.xs.size() << " samples)"; },
               },
               family_);
    return os.str();
}

double eval(const CostFunction& c, double x) { return c(x); }
double invert(const CostFunction& c, double v) { return c.invert(v); }

SubsidyPlan SubsidyPlan::proportional(double beta) {
    require(std::isfinite(beta) && beta > 0.0 && beta <= 1.0, "proportional subsidy requires beta in (0,1]");
    return SubsidyPlan{Kind::Proportional, beta};
}

SubsidyPlan SubsidyPlan::flat(double alpha) {
    require(std::isfinite(alpha) && alpha >= 0.0, "flat subsidy requires alpha >= 0");
    return SubsidyPlan{Kind::Flat, alpha};
}

double SubsidyPlan::beta() const { return kind_ == Kind::Proportional ? value_ : 1.0; }
double SubsidyPlan::alpha() const { return kind_ == Kind::Flat ? value_ : 0.0; }

std::vector<double> CostFunction::kinks() const {
    std::vector<double> out;
    if (const auto* t = std::get_if<cost::Tabulated>(&family_)) {
        if (t->xs.size() > 2) out.assign(t->xs.begin() + 1, t->xs.end() - 1);
    }
    return out;
}

double SubsidyPlan::budget() const {
    switch (kind_) {
        case Kind::Proportional: return 1.0 / value_;
        case Kind::Flat: return 1.0 + value_;
        case Kind::None: break;
    }
    return 1.0;
}

double SubsidyPlan::candidate_share(double raw_cost) const {
    switch (kind_) {
        case Kind::Proportional: return value_ * raw_cost;
        case Kind::Flat: return std::max(0.0, raw_cost - value_);
        case Kind::None: break;
    }
    return raw_cost;
}

double SubsidyPlan::learner_share(double raw_cost) const {
    switch (kind_) {
        case Kind::Proportional: return raw_cost - value_ * raw_cost;
        case Kind::Flat: return std::min(value_, raw_cost);
        case Kind::None: break;
    }
    return 0.0;
}

bool SubsidyPlan::is_trivial() const {
    return kind_ == Kind::None || (kind_ == Kind::Proportional && value_ == 1.0) ||
           (kind_ == Kind::Flat && value_ == 0.0);
}

std::string SubsidyPlan::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::None: os << "none"; break;
        case Kind::Proportional: os << "proportional(beta=" << value_ << ")"; break;
        case Kind::Flat: os << "flat(alpha=" << value_ << ")"; break;
    }
    return os.str();
}

double manipulation_cost(const CostFunction& c, double x, double y, const SubsidyPlan& plan) {
    if (y < x) throw std::domain_error("manipulation must not decrease the feature (y < x)");
    if (y == x) return 0.0;
    return plan.candidate_share(c(y) - c(x));
}

CostConditionReport check_cost_condition(const CostFunction& cost_a, const CostFunction& cost_b,
                                         std::size_t grid_resolution) {
    constexpr std::size_t kMaxListed = 16;
    constexpr double kSlack = 1e-12;
    CostConditionReport report;
    const std::size_t n = std::max<std::size_t>(grid_resolution, 2);
    std::vector<double> xs(n), ca(n), cb(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        ca[i] = cost_a(xs[i]);
        cb[i] = cost_b(xs[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            ++report.pairs_checked;
            const double margin = (ca[j] - ca[i]) - (cb[j] - cb[i]);
            const double scale = std::max({1.0, std::abs(cb[j]), std::abs(ca[j])});
            if (margin > kSlack * scale) {
                ++report.violation_count;
                report.worst_margin = std::max(report.worst_margin, margin);
                report.violations.push_back({xs[i], xs[j], margin});
            }
        }
    }
    report.holds = report.violation_count == 0;
    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const auto& l, const auto& r) { return l.margin > r.margin; });
    if (report.violations.size() > kMaxListed) report.violations.resize(kMaxListed);
    return report;
}

void LinearCostVector::validate() const {
    require(!coeffs.empty(), "linear cost vector must have at least one coordinate");
    for (double c : coeffs) {
        require(std::isfinite(c) && c > 0.0, "linear cost coefficients must be strictly positive");
    }
}

}  // namespace scg
