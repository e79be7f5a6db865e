#pragma once

#include "scg/cost_model.hpp"
#include "scg/population.hpp"

namespace scg {

/// Per-capita learner spend on group-B candidates under a proportional plan:
/// (1-beta) * integral over [ell_B^beta(sigma), sigma] of (c_B(sigma)-c_B(x)) dD_B.
/// Throws std::domain_error for beta outside (0,1].
double subsidy_money_proportional(const Group1D& group_b, double sigma, double beta);

/// Per-capita learner spend under a flat plan: full reimbursement for
/// candidates whose raw cost is at most alpha, alpha for the rest of the
/// manipulating band [ell_B^alpha(sigma), sigma).
double subsidy_money_flat(const Group1D& group_b, double sigma, double alpha);

/// Dispatches on the plan kind; zero for SubsidyPlan::none().
double subsidy_money(const Group1D& group_b, double sigma, const SubsidyPlan& plan);

}  // namespace scg
