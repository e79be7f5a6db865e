#include "scg/numerics.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "scg/cost_model.hpp"

namespace scg::numerics {

double bisect_increasing(const std::function<double(double)>& f, double target, double lo, double hi,
                         double value_tol) {
    // Bisect well past the contract tolerance; the extra iterations are cheap and
    // keep downstream duality checks (ell(sigma_boundary) == tau) tight.
    const double tol = std::min(value_tol, 1e-13 * std::max(1.0, std::abs(target)));
    double f_lo = f(lo);
    if (f_lo >= target) return lo;
    if (f(hi) <= target) return hi;
    for (int i = 0; i < kBisectionMaxIterations; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (std::abs(f_mid - target) <= tol) return mid;
        if (f_mid < target) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

ScalarMin golden_section(const std::function<double(double)>& f, double lo, double hi, double tol,
                         int max_iterations) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int it = 0;
    while (b - a > tol) {
        if (++it > max_iterations) {
            throw NumericalError("golden-section refinement did not converge on [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
        }
        // `<=` keeps the left bracket on ties, biasing toward smaller x.
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    ScalarMin out;
    out.iterations = it;
    if (fc <= fd) {
        out.x = c;
        out.value = fc;
    } else {
        out.x = d;
        out.value = fd;
    }
    return out;
}

ScalarMin grid_minimize(const std::function<double(double)>& f, double lo, double hi, std::size_t grid,
                        double tol) {
    if (!(hi > lo)) return {lo, f(lo), 0};
    const std::size_t n = std::max<std::size_t>(grid, 2);
    auto point = [&](std::size_t i) {
        return i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    std::vector<double> values(n);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = f(point(i));
        best = std::min(best, values[i]);
    }
    std::size_t arg = 0;
    while (values[arg] > best + tie_tolerance(best)) ++arg;

    ScalarMin out{point(arg), values[arg], 0};
    const double cell_lo = point(arg == 0 ? 0 : arg - 1);
    const double cell_hi = point(std::min(arg + 1, n - 1));
    if (cell_hi - cell_lo > tol) {
        const auto refined = golden_section(f, cell_lo, cell_hi, tol);
        if (refined.value < out.value - tie_tolerance(out.value)) out = refined;
    }
    return out;
}

namespace {

// GK31 on [a, b] rescaled to [0, 1]. Boost compares its unscaled error
// estimate against a scaled tolerance, which over-refines short intervals.
template <class F>
double unit_piece(const F& f, double a, double b, double* err) {
    const double w = b - a;
    auto g = [&](double t) { return f(a + w * t); };
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 15, 1e-11, err);
    *err *= w;
    return w * v;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, std::span<const double> breaks,
                 double abs_tol) {
    if (!(hi > lo)) return 0.0;
    std::vector<double> pts{lo};
    for (double b : breaks) {
        if (b > lo && b < hi) pts.push_back(b);
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    CompensatedSum total;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double err = 0.0;
        double piece = 0.0;
        if (pts[i] >= 0.0 && pts[i] < pts[i + 1] - pts[i]) {
            // Near the origin, x = u^2 smooths the sqrt-type behaviour of cost families at 0.
            piece = unit_piece([&](double u) { return 2.0 * u * f(u * u); }, std::sqrt(pts[i]), std::sqrt(pts[i + 1]),
                               &err);
        } else {
            piece = unit_piece(f, pts[i], pts[i + 1], &err);
        }
        total.add(piece);
        total_err += err;
    }
    if (!(total_err <= abs_tol)) {
        throw NumericalError("quadrature error estimate " + std::to_string(total_err) + " exceeds tolerance");
    }
    return total.value();
}

}  // namespace scg::numerics
