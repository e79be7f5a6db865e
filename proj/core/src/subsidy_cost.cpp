#include "scg/subsidy_cost.hpp"

#include <algorithm>
#include <stdexcept>

#include "scg/equilibrium_1d.hpp"
#include "scg/numerics.hpp"

namespace scg {

double subsidy_money_proportional(const Group1D& group_b, double sigma, double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw std::domain_error("proportional subsidy spend requires beta in (0,1]");
    }
    if (beta == 1.0 || sigma <= 0.0 || sigma > 1.0) return 0.0;
    const auto plan = SubsidyPlan::proportional(beta);
    const double lo = ell(group_b, sigma, plan);
    const auto& c = group_b.cost;
    const auto& d = group_b.distribution;
    const double c_sigma = c(sigma);
    const double integral = numerics::integrate([&](double x) { return (c_sigma - c(x)) * d.density(x); }, lo,
                                                sigma, group_b.breakpoints());
    return (1.0 - beta) * integral;
}

double subsidy_money_flat(const Group1D& group_b, double sigma, double alpha) {
    if (!(alpha >= 0.0)) throw std::domain_error("flat subsidy spend requires alpha >= 0");
    if (alpha == 0.0 || sigma <= 0.0 || sigma > 1.0) return 0.0;
    const auto& c = group_b.cost;
    const auto& d = group_b.distribution;
    const double c_sigma = c(sigma);
    // Candidates at or above `covered` have raw cost <= alpha and are reimbursed in full.
    const double covered = c_sigma - alpha <= c.at_zero() ? 0.0 : c.invert(c_sigma - alpha);
    const double band_lo = std::min(covered, ell(group_b, sigma, SubsidyPlan::flat(alpha)));
    const double full = numerics::integrate([&](double x) { return (c_sigma - c(x)) * d.density(x); }, covered,
                                            sigma, group_b.breakpoints());
    return full + alpha * clamped_mass(d, band_lo, covered);
}

double subsidy_money(const Group1D& group_b, double sigma, const SubsidyPlan& plan) {
    switch (plan.kind()) {
        case SubsidyPlan::Kind::Proportional: return subsidy_money_proportional(group_b, sigma, plan.beta());
        case SubsidyPlan::Kind::Flat: return subsidy_money_flat(group_b, sigma, plan.alpha());
        case SubsidyPlan::Kind::None: break;
    }
    return 0.0;
}

}  // namespace scg
