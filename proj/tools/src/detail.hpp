#pragma once

#include <string>

#include "scg/equilibrium_1d.hpp"
#include "scg/equilibrium_nd.hpp"
#include "scg/reports/config.hpp"
#include "scg/reports/output.hpp"
#include "scg/subsidy_welfare.hpp"

namespace scg::reports::detail {

inline std::string plan_kind(const SubsidyPlan& p) {
    switch (p.kind()) {
        case SubsidyPlan::Kind::Proportional: return "proportional";
        case SubsidyPlan::Kind::Flat: return "flat";
        case SubsidyPlan::Kind::None: break;
    }
    return "none";
}

inline Json plan_json(const SubsidyPlan& p) { return {{"kind", plan_kind(p)}, {"parameter", p.parameter()}}; }

inline Json penalty_json(const Penalty& p) {
    return {{"fn_b", p.fn_b},   {"fp_a", p.fp_a},   {"fn_a", p.fn_a},          {"fp_b", p.fp_b},
            {"errors", p.errors()}, {"subsidy_money", p.subsidy_money}, {"total", p.total}, {"dominated", p.dominated}};
}

inline Json estimate_json(const Estimate& e) { return {{"value", e.value}, {"std_error", e.std_error}}; }

inline Json penalty_json(const PenaltyND& p) {
    return {{"fn_b", estimate_json(p.fn_b)},
            {"fp_a", estimate_json(p.fp_a)},
            {"fn_a", estimate_json(p.fn_a)},
            {"fp_b", estimate_json(p.fp_b)},
            {"subsidy_money", estimate_json(p.subsidy_money)},
            {"total", estimate_json(p.total)},
            {"samples", p.samples},
            {"dominated", p.dominated}};
}

inline SearchOptions search_options(const RunOptions& r) { return {r.sigma_grid, SearchOptions{}.refine_tol}; }

inline SubsidySearchOptions subsidy_options(const RunOptions& r) {
    SubsidySearchOptions o;
    o.sigma_grid = r.subsidy_grid;
    o.param_grid = r.subsidy_grid;
    return o;
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace scg::reports::detail
