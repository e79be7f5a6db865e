#include "scg/equilibrium_nd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "scg/numerics.hpp"

namespace scg {

double Hyperplane::score(std::span<const double> y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * y[i];
    return s;
}

void Hyperplane::validate() const {
    if (g.empty()) throw ValidationError("hyperplane needs at least one weight");
    bool positive = false;
    for (double gi : g) {
        if (!(gi >= 0.0) || !std::isfinite(gi)) throw ValidationError("hyperplane weights must be finite and >= 0");
        positive = positive || gi > 0.0;
    }
    if (!positive) throw ValidationError("hyperplane needs some g_i > 0");
    if (!std::isfinite(g0)) throw ValidationError("hyperplane offset must be finite");
}

std::vector<double> Simplex::raw_vertex(std::size_t i) const {
    std::vector<double> v = anchor;
    if (i == 0) return v;
    const std::size_t axis = i - 1;
    const double step = budget / costs.coeffs.at(axis);
    v[axis] += direction == Direction::Forward ? step : -step;
    return v;
}

std::vector<double> Simplex::vertex(std::size_t i) const {
    auto v = raw_vertex(i);
    for (double& vi : v) vi = std::clamp(vi, 0.0, 1.0);
    return v;
}

bool Simplex::contains(std::span<const double> point, double slack) const {
    double spent = 0.0;
    for (std::size_t i = 0; i < anchor.size(); ++i) {
        if (point[i] < -slack || point[i] > 1.0 + slack) return false;
        const double delta = direction == Direction::Forward ? point[i] - anchor[i] : anchor[i] - point[i];
        if (delta < -slack) return false;
        spent += costs.coeffs[i] * std::max(0.0, delta);
    }
    return spent <= budget + slack;
}

std::vector<std::size_t> best_ratio_directions(std::span<const double> g, const LinearCostVector& costs) {
    double best = -1.0;
    for (std::size_t i = 0; i < g.size(); ++i) best = std::max(best, g[i] / costs.coeffs[i]);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] / costs.coeffs[i] >= best * (1.0 - 1e-12)) out.push_back(i);
    }
    return out;
}

BestResponseND best_response_nd(std::span<const double> x, const LinearCostVector& costs, const Hyperplane& h,
                                const SubsidyPlan& plan) {
    const std::size_t d = x.size();
    if (costs.dim() != d || h.g.size() != d) throw std::invalid_argument("best_response_nd: dimension mismatch");
    BestResponseND out;
    out.y.assign(x.begin(), x.end());
    if (h.admits(x)) {
        out.payoff = 1.0;
        return out;
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return h.g[l] / costs.coeffs[l] > h.g[r] / costs.coeffs[r];
    });

    std::vector<double> y(x.begin(), x.end());
    double remaining = h.g0 - h.score(x);
    double raw = 0.0;
    bool saturated = false;
    std::size_t last = d;
    for (std::size_t i : order) {
        if (h.g[i] <= 0.0) break;
        const double room = 1.0 - y[i];
        if (room <= 0.0) {
            saturated = true;
            continue;
        }
        const double gain = h.g[i] * room;
        last = i;
        if (gain >= remaining) {
            const double delta = remaining / h.g[i];
            y[i] = std::min(1.0, y[i] + delta);
            raw += costs.coeffs[i] * delta;
            remaining = 0.0;
            break;
        }
        y[i] = 1.0;
        raw += costs.coeffs[i] * room;
        remaining -= gain;
        saturated = true;
    }
    if (remaining > 0.0 || last == d) return out;  // hyperplane unreachable inside the box

    // Land on the closed side of the hyperplane despite rounding.
    for (int nudge = 0; nudge < 16 && !h.admits(y) && y[last] < 1.0; ++nudge) {
        const double before = y[last];
        const double step = std::max((h.g0 - h.score(y)) / h.g[last], std::nextafter(before, 2.0) - before);
        y[last] = std::min(1.0, before + std::ldexp(step, nudge));
        raw += costs.coeffs[last] * (y[last] - before);
    }
    if (!h.admits(y)) return out;
    if (raw > plan.budget() * (1.0 + 1e-12)) return out;

    out.y = std::move(y);
    out.paid_cost = std::min(1.0, plan.candidate_share(raw));
    out.payoff = 1.0 - out.paid_cost;
    out.saturated = saturated;
    for (std::size_t i = 0; i < d; ++i) {
        if (out.y[i] > x[i]) out.moved_components.push_back(i);
    }
    return out;
}

Hyperplane perfect_classifier(const GroupND& group, double budget) {
    group.costs.validate();
    const auto& w = group.rule.weights;
    const auto k = best_ratio_directions(w, group.costs).front();
    return Hyperplane{w, group.rule.tau + budget * w[k] / group.costs.coeffs[k]};
}

bool perfect_classifier_interior(const GroupND& group, double budget) {
    const auto h = perfect_classifier(group, budget);
    const auto k = best_ratio_directions(h.g, group.costs).front();
    return h.g0 <= h.g[k];
}

double effective_level(const Hyperplane& h, const LinearCostVector& costs, double budget) {
    double best = 0.0;
    for (std::size_t i = 0; i < h.g.size(); ++i) best = std::max(best, h.g[i] / costs.coeffs[i]);
    return h.g0 - budget * best;
}

namespace {

struct RunningMean {
    numerics::CompensatedSum sum;
    numerics::CompensatedSum sum_sq;
    void add(double v) {
        sum.add(v);
        sum_sq.add(v * v);
    }
    Estimate finish(std::size_t n) const {
        const double nn = static_cast<double>(n);
        const double mean = sum.value() / nn;
        const double var = std::max(0.0, sum_sq.value() / nn - mean * mean);
        return {mean, n > 1 ? std::sqrt(var / (nn - 1.0)) : 0.0};
    }
};

Estimate combine(const Estimate& a, const Estimate& b) {
    return {a.value + b.value, std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error)};
}

}  // namespace

PenaltyND learner_cost_nd(const ScenarioND& s, const Hyperplane& h, const SubsidyPlan& plan,
                          MonteCarloOptions opts) {
    if (opts.samples == 0) throw std::invalid_argument("learner_cost_nd: sample count must be > 0");
    h.validate();
    const auto& par = s.params();
    const std::size_t d = s.dim();

    const double level_a = effective_level(h, s.a().costs, 1.0);
    const double level_b = effective_level(h, s.b().costs, plan.budget());
    const auto kb = best_ratio_directions(h.g, s.b().costs).front();
    const double slope_b = s.b().costs.coeffs[kb] / h.g[kb];

    std::vector<double> x(d);
    auto draw = [&](const GroupND& g, std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t i = 0; i < d; ++i) x[i] = g.marginals[i].quantile(u(rng));
    };

    RunningMean fp_a, fn_a, fn_b, fp_b, money, tot_a, tot_b;
    std::seed_seq seq_a{opts.seed, std::uint64_t{0xA}};
    std::seed_seq seq_b{opts.seed, std::uint64_t{0xB}};
    std::mt19937_64 rng_a(seq_a);
    std::mt19937_64 rng_b(seq_b);
    for (std::size_t n = 0; n < opts.samples; ++n) {
        draw(s.a(), rng_a);
        const double score_a = h.score(x);
        const bool pos_a = s.a().rule.label(x);
        const double e_fp_a = (!pos_a && score_a >= level_a) ? par.c_fp * par.p_a : 0.0;
        const double e_fn_a = (pos_a && score_a < level_a) ? par.c_fn * par.p_a : 0.0;
        fp_a.add(e_fp_a);
        fn_a.add(e_fn_a);
        tot_a.add(e_fp_a + e_fn_a);

        draw(s.b(), rng_b);
        const double score_b = h.score(x);
        const bool pos_b = s.b().rule.label(x);
        const double e_fn_b = (pos_b && score_b < level_b) ? par.c_fn * par.p_b : 0.0;
        const double e_fp_b = (!pos_b && score_b >= level_b) ? par.c_fp * par.p_b : 0.0;
        double spend = 0.0;
        if (score_b >= level_b && score_b < h.g0) spend = par.p_b * plan.learner_share(slope_b * (h.g0 - score_b));
        fn_b.add(e_fn_b);
        fp_b.add(e_fp_b);
        money.add(spend);
        tot_b.add(e_fn_b + e_fp_b + par.lambda * spend);
    }

    PenaltyND out;
    out.samples = opts.samples;
    out.fp_a = fp_a.finish(opts.samples);
    out.fn_b = fn_b.finish(opts.samples);
    out.subsidy_money = money.finish(opts.samples);
    out.total = combine(tot_a.finish(opts.samples), tot_b.finish(opts.samples));
    out.fn_a = fn_a.finish(opts.samples);
    out.fp_b = fp_b.finish(opts.samples);
    out.dominated = out.fn_a.value > 0.0 || out.fp_b.value > 0.0;
    return out;
}

std::pair<double, double> undominated_offsets(const ScenarioND& s, const SubsidyPlan& plan) {
    if (s.a().rule.weights != s.b().rule.weights) {
        throw std::invalid_argument("undominated_offsets: groups must share the true-rule direction");
    }
    return {perfect_classifier(s.b(), plan.budget()).g0, perfect_classifier(s.a()).g0};
}

OffsetSweep sweep_offsets_nd(const ScenarioND& s, const std::vector<double>& g, double lo, double hi,
                             std::size_t steps, const SubsidyPlan& plan, MonteCarloOptions opts) {
    if (steps == 0) throw std::invalid_argument("sweep_offsets_nd: steps must be > 0");
    if (!(hi >= lo)) throw std::invalid_argument("sweep_offsets_nd: inverted offset range");
    OffsetSweep out;
    out.rows.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double g0 = steps == 1 ? lo
                          : i + 1 == steps
                              ? hi
                              : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
        const Hyperplane h{g, g0};
        auto pen = learner_cost_nd(s, h, plan, opts);
        if (out.rows.empty() || pen.total.value < out.penalty.total.value - numerics::tie_tolerance(out.penalty.total.value)) {
            out.best = h;
            out.penalty = pen;
        }
        out.rows.push_back({g0, std::move(pen)});
    }
    return out;
}

double ReducedGame::score(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * x[i];
    return s;
}

ReducedGame reduce_to_1d(const Hyperplane& h, const LinearCostVector& costs) {
    h.validate();
    costs.validate();
    if (costs.dim() != h.g.size()) throw std::invalid_argument("reduce_to_1d: dimension mismatch");
    ReducedGame r;
    r.g = h.g;
    r.k = best_ratio_directions(h.g, costs).front();
    r.slope = costs.coeffs[r.k] / h.g[r.k];
    return r;
}

DominanceDiagnostic dominance_repair_diagnostic(const GroupND& group_a, const Hyperplane& f, std::size_t per_axis) {
    const auto f1 = perfect_classifier(group_a);
    const std::size_t d = group_a.dim();
    DominanceDiagnostic out;
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    const auto none = SubsidyPlan::none();
    while (true) {
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = (static_cast<double>(idx[i]) + 0.5) / static_cast<double>(per_axis);
        }
        const bool positive = group_a.rule.label(x);
        const bool by_f = f.admits(best_response_nd(x, group_a.costs, f, none).y);
        const bool by_f1 = f1.admits(best_response_nd(x, group_a.costs, f1, none).y);
        if (!positive && by_f && !by_f1) ++out.fp_a_removed;
        if (positive && !by_f && by_f1) ++out.fn_a_removed;
        std::size_t k = 0;
        while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
        if (k == d) break;
    }
    out.strictly_improves = out.fp_a_removed + out.fn_a_removed > 0;
    return out;
}

}  // namespace scg
