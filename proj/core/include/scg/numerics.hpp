#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

namespace scg::numerics {

inline constexpr double kInvertTolerance = 1e-9;
inline constexpr int kBisectionMaxIterations = 200;

/// Solves f(x) = target for non-decreasing f on [lo, hi] by bisection.
///
/// Stops once |f(mid) - target| <= value_tol (tightened internally) or the
/// bracket collapses to adjacent doubles. The bracket must contain the root.
double bisect_increasing(const std::function<double(double)>& f, double target, double lo, double hi,
                         double value_tol = kInvertTolerance);

struct ScalarMin {
    double x = 0.0;
    double value = 0.0;
    int iterations = 0;
};

/// Golden-section minimisation over the open interval (lo, hi). The endpoints
/// are never evaluated. Throws NumericalError if the interval is not reduced
/// below `tol` within `max_iterations`.
ScalarMin golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-7,
                         int max_iterations = 200);

/// Minimum of f over [lo, hi]: evaluate a uniform grid of `grid` points
/// (endpoints included), then golden-section inside the winning cell. The
/// refined point replaces the grid point only if strictly better; grid ties
/// resolve to the smallest x.
ScalarMin grid_minimize(const std::function<double(double)>& f, double lo, double hi, std::size_t grid,
                        double tol = 1e-7);

/// Relative tie tolerance used by the grid searches.
inline double tie_tolerance(double v) { return 1e-12 * std::max(1.0, std::abs(v)); }

/// Adaptive Gauss-Kronrod integral of f over [lo, hi]; splits at `breaks`
/// falling strictly inside. Throws NumericalError when the error estimate
/// exceeds `abs_tol`.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 std::span<const double> breaks = {}, double abs_tol = 1e-9);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace scg::numerics
