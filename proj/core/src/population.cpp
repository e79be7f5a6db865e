#include "scg/population.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace scg {

Distribution Distribution::uniform() { return Distribution{}; }

Distribution Distribution::piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw ValidationError("piecewise-linear density needs >= 2 knots");
    if (knots.front().first != 0.0 || knots.back().first != 1.0) {
        throw ValidationError("piecewise-linear density knots must span exactly [0,1]");
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i].second >= 0.0) || !std::isfinite(knots[i].second)) {
            throw ValidationError("density values must be finite and >= 0");
        }
        if (i > 0 && !(knots[i].first > knots[i - 1].first)) {
            throw ValidationError("density knots must be strictly increasing in x");
        }
    }
    double mass = 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        mass += 0.5 * (knots[i].second + knots[i - 1].second) * (knots[i].first - knots[i - 1].first);
    }
    if (!(mass > 0.0)) throw ValidationError("density has zero total mass");

    Distribution d;
    d.kind_ = Kind::PiecewiseLinear;
    for (auto& k : knots) k.second /= mass;
    d.knots_ = std::move(knots);
    d.cum_.assign(d.knots_.size(), 0.0);
    for (std::size_t i = 1; i < d.knots_.size(); ++i) {
        const auto& [x0, f0] = d.knots_[i - 1];
        const auto& [x1, f1] = d.knots_[i];
        d.cum_[i] = d.cum_[i - 1] + 0.5 * (f0 + f1) * (x1 - x0);
    }
    const double total = d.cum_.back();
    for (double& c : d.cum_) c /= total;
    for (std::size_t i = 1; i + 1 < d.knots_.size(); ++i) d.breaks_.push_back(d.knots_[i].first);
    return d;
}

double Distribution::density(double x) const {
    if (x < 0.0 || x > 1.0) return 0.0;
    if (kind_ == Kind::Uniform01) return 1.0;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const auto& k) { return v < k.first; });
    if (it == knots_.end()) return knots_.back().second;
    const auto j = static_cast<std::size_t>(it - knots_.begin());
    const auto& [x0, f0] = knots_[j - 1];
    const auto& [x1, f1] = knots_[j];
    return f0 + (x - x0) / (x1 - x0) * (f1 - f0);
}

double Distribution::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (kind_ == Kind::Uniform01) return x;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const auto& k) { return v < k.first; });
    const auto j = static_cast<std::size_t>(it - knots_.begin());
    const auto& [x0, f0] = knots_[j - 1];
    const double fx = density(x);
    return cum_[j - 1] + 0.5 * (f0 + fx) * (x - x0);
}

double Distribution::quantile(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (kind_ == Kind::Uniform01) return u;
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    const auto j = std::min(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
    const auto& [x0, f0] = knots_[j - 1];
    const auto& [x1, f1] = knots_[j];
    const double need = u - cum_[j - 1];
    const double slope = (f1 - f0) / (x1 - x0);
    // Solve f0*t + slope*t^2/2 = need for t in [0, x1-x0].
    double t;
    if (std::abs(slope) < 1e-300) {
        t = f0 > 0.0 ? need / f0 : 0.0;
    } else {
        const double disc = std::max(0.0, f0 * f0 + 2.0 * slope * need);
        t = 2.0 * need / (f0 + std::sqrt(disc));  // stable root form
    }
    return std::clamp(x0 + t, x0, x1);
}

std::string Distribution::describe() const {
    if (kind_ == Kind::Uniform01) return "uniform[0,1]";
    std::ostringstream os;
    os << "piecewise_linear(" << knots_.size() << " knots)";
    return os.str();
}

double interval_mass(const Distribution& d, double lo, double hi) {
    if (!(lo <= hi)) throw std::domain_error("interval_mass: inverted interval");
    if (lo < 0.0 || hi > 1.0) throw std::domain_error("interval_mass: interval outside [0,1]");
    if (lo == hi) return 0.0;
    return d.cdf(hi) - d.cdf(lo);
}

double clamped_mass(const Distribution& d, double lo, double hi) {
    lo = std::clamp(lo, 0.0, 1.0);
    hi = std::clamp(hi, 0.0, 1.0);
    if (!(hi > lo)) return 0.0;
    return d.cdf(hi) - d.cdf(lo);
}

double TrueRuleND::score(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * x[i];
    return s;
}

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::string s;
    for (const auto& f : failures) {
        if (!s.empty()) s += "; ";
        s += f;
    }
    return s;
}

namespace {

void check_common(ValidationReport& r, double p_a, double p_b, double c_fp, double c_fn, double lambda) {
    if (!(p_a >= 0.0 && p_a <= 1.0 && p_b >= 0.0 && p_b <= 1.0)) r.fail("proportions: p_a, p_b must lie in [0,1]");
    if (!(std::abs(p_a + p_b - 1.0) <= 1e-12)) r.fail("proportions: p_a + p_b must equal 1");
    if (!(c_fp >= 0.0) || !(c_fn >= 0.0)) r.fail("penalties: c_fp and c_fn must be >= 0");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) r.fail("penalties: lambda must be finite and >= 0");
}

}  // namespace

ValidationReport validate_scenario(const ScenarioParams& s) {
    ValidationReport r;
    check_common(r, s.p_a, s.p_b, s.c_fp, s.c_fn, s.lambda);
    for (double tau : {s.group_a.tau(), s.group_b.tau()}) {
        if (!(tau >= 0.0 && tau <= 1.0)) r.fail("thresholds: tau must lie in [0,1]");
    }
    if (!(s.group_b.tau() <= s.group_a.tau())) r.fail("containment: requires tau_B <= tau_A");
    const auto cc = check_cost_condition(s.group_a.cost, s.group_b.cost);
    if (!cc.holds) {
        std::ostringstream os;
        os << "cost condition: " << cc.violation_count << " violating pairs, worst margin " << cc.worst_margin;
        r.fail(os.str());
    }
    return r;
}

ValidationReport validate_scenario(const ScenarioNDParams& s) {
    ValidationReport r;
    check_common(r, s.p_a, s.p_b, s.c_fp, s.c_fn, s.lambda);
    const auto d = s.group_a.costs.dim();
    const GroupND* groups[] = {&s.group_a, &s.group_b};
    for (const GroupND* g : groups) {
        if (g->costs.dim() != d || g->rule.weights.size() != d || g->marginals.size() != d) {
            r.fail("dimensions: costs, weights and marginals must share one dimension");
            return r;
        }
        for (double c : g->costs.coeffs) {
            if (!(c > 0.0)) r.fail("costs: linear coefficients must be > 0");
        }
        for (double w : g->rule.weights) {
            if (!(w >= 0.0)) r.fail("weights: true-rule weights must be >= 0");
        }
    }
    if (d == 0) r.fail("dimensions: d must be >= 1");
    for (std::size_t i = 0; i < d; ++i) {
        if (s.group_a.costs.coeffs[i] > s.group_b.costs.coeffs[i]) {
            r.fail("cost condition: requires c_A,i <= c_B,i for every coordinate");
            break;
        }
    }
    // Containment h_A(x)=1 => h_B(x)=1, checked on a grid (17 points per axis, capped).
    const std::size_t per_axis = d <= 3 ? 17 : 5;
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d, 0.0);
    bool done = d == 0;
    while (!done) {
        for (std::size_t i = 0; i < d; ++i) x[i] = static_cast<double>(idx[i]) / static_cast<double>(per_axis - 1);
        if (s.group_a.rule.label(x) && !s.group_b.rule.label(x)) {
            r.fail("containment: some x has h_A(x)=1 but h_B(x)=0");
            break;
        }
        std::size_t k = 0;
        while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
        done = k == d;
    }
    return r;
}

Scenario::Scenario(ScenarioParams params) : p_(std::move(params)) {
    const auto r = validate_scenario(p_);
    if (!r.ok) throw ValidationError("invalid scenario: " + r.summary());
}

ScenarioND::ScenarioND(ScenarioNDParams params) : p_(std::move(params)) {
    const auto r = validate_scenario(p_);
    if (!r.ok) throw ValidationError("invalid scenario: " + r.summary());
}

std::vector<double> Group1D::breakpoints() const {
    std::vector<double> out(distribution.breakpoints().begin(), distribution.breakpoints().end());
    const auto k = cost.kinks();
    out.insert(out.end(), k.begin(), k.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace scg
