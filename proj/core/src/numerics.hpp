#pragma once

// Internal quadrature and root-finding wrappers over Boost.Math.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "cmczone/error.hpp"

namespace cmczone::detail {

namespace gk {

// One 31-point Gauss-Kronrod panel. Boost reports the error of the rule on
// [-1, 1]; it is rescaled to [a, b] here.
template <class F>
double panel(F& f, double a, double b, double& err, double& l1) {
    double e = 0.0, L1 = 0.0;
    double r = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &e, &L1);
    err = e * std::fabs(b - a) / 2;
    l1 = L1;
    return r;
}

template <class F>
double refine(F& f, double a, double b, double r, double err, double l1, double density, unsigned depth) {
    constexpr double kFloor = 50 * std::numeric_limits<double>::epsilon();
    if (depth == 0 || err <= density * std::fabs(b - a) || err <= kFloor * l1) return r;
    double m = 0.5 * (a + b), e1 = 0, e2 = 0, l1a = 0, l1b = 0;
    double r1 = panel(f, a, m, e1, l1a);
    double r2 = panel(f, m, b, e2, l1b);
    return refine(f, a, m, r1, e1, l1a, density, depth - 1) + refine(f, m, b, r2, e2, l1b, density, depth - 1);
}

}  // namespace gk

// Adaptive 31-point Gauss-Kronrod on a finite interval. tol is relative to the
// first estimate and is spread over subintervals in proportion to their length;
// panels whose error is at the rounding floor are accepted as they are.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-14, unsigned max_depth = 18) {
    if (a == b) return 0.0;
    double err = 0.0, l1 = 0.0;
    double r = gk::panel(f, a, b, err, l1);
    double density = tol * std::fabs(r) / std::fabs(b - a);
    return gk::refine(f, a, b, r, err, l1, density, max_depth);
}

// Bisection on a sign-changing bracket. Terminates when the bracket is
// narrower than xtol or has collapsed to adjacent doubles.
template <class F>
double bisect_root(F&& f, double lo, double hi, double xtol, const std::string& what) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        fail(ErrorCode::NoBracket, what + ": no sign change on [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]");
    auto done = [xtol](double a, double b) {
        double scale = std::max(std::fabs(a), std::fabs(b));
        return std::fabs(b - a) <= std::max(xtol, 4 * std::numeric_limits<double>::epsilon() * scale);
    };
    auto r = boost::math::tools::bisect(f, lo, hi, done);
    return 0.5 * (r.first + r.second);
}

}  // namespace cmczone::detail
