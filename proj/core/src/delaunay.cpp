#include "cmczone/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmczone/error.hpp"
#include "numerics.hpp"

namespace cmczone {

namespace {

constexpr double kRootTol = 1e-15;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Integral of N / sqrt(x^2 - N^2) over [lo, hi] within [p, q]. The interval is
// split at (p + q) / 2; the part above is written in x = q - u^2 and the part
// below in x = p + v^2, which removes the inverse-square-root behaviour at
// either turning height and keeps both distances free of cancellation.
double slope_integral(const DelaunayParams& d, double lo, double hi) {
    if (hi <= lo) return 0.0;
    const double H = d.H, t = d.t, p = d.p(), q = d.q();
    const double gap = q - p;
    auto N = [H, t](double x) { return H * x * x + t - H * t * t; };
    const double m = std::clamp(0.5 * (p + q), lo, hi);

    auto upper = [&](double u) {
        double u2 = u * u;
        double x = q - u2;
        return 2.0 * N(x) / (H * std::sqrt((q + x) * (gap - u2) * (x + p)));
    };
    double a = detail::integrate(upper, std::sqrt(std::max(q - hi, 0.0)), std::sqrt(std::max(q - m, 0.0)));
    const double v_lo = std::sqrt(std::max(lo - p, 0.0)), v_hi = std::sqrt(std::max(m - p, 0.0));
    if (p == 0.0) {
        auto lower = [&](double v) {
            double v2 = v * v;
            return 2.0 * N(v2) / (H * std::sqrt((gap - v2) * q + (gap - v2) * v2) * v);
        };
        return a + detail::integrate(lower, v_lo, v_hi);
    }
    // x + p = 2p + v^2 has a peak of width sqrt(p); v = sqrt(2p) sinh(w) flattens it.
    const double c = std::sqrt(2.0 * p);
    auto lower = [&](double w) {
        double v = c * std::sinh(w);
        double v2 = v * v;
        double x = p + v2;
        return 2.0 * N(x) / (H * std::sqrt((gap - v2) * (q + x)));
    };
    return a + detail::integrate(lower, std::asinh(v_lo / c), std::asinh(v_hi / c));
}

void check_in(double x, double lo, double hi, const char* what) {
    double slack = 1e-14 * std::max(1.0, std::fabs(hi));
    if (!(x >= lo - slack && x <= hi + slack))
        fail(ErrorCode::OutOfWindow, std::string(what) + ": " + num(x) + " outside [" + num(lo) + ", " +
                                         num(hi) + "]");
}

}  // namespace

double DelaunayParams::turning_partner() const { return std::fabs(1.0 / H - t); }
double DelaunayParams::p() const { return std::min(t, turning_partner()); }
double DelaunayParams::q() const { return std::max(t, turning_partner()); }

double DelaunayParams::window_lo() const {
    if (neck_at_t()) return t;
    double n0 = t * t - t / H;  // N vanishes at x^2 = t^2 - t/H
    return std::max(p(), n0 > 0 ? std::sqrt(n0) : 0.0);
}

double DelaunayParams::window_hi() const { return neck_at_t() ? q() : t; }

void DelaunayParams::validate() const {
    if (!(H > 0) || !(t > 0) || !std::isfinite(H) || !std::isfinite(t))
        fail(ErrorCode::OutOfWindow, "Delaunay parameters need H > 0, t > 0; got H = " + num(H) + ", t = " + num(t));
    if (!(q() - p() > 1e-12))
        fail(ErrorCode::OutOfWindow, "degenerate Delaunay parameters (cylinder): H = " + num(H) + ", t = " + num(t));
}

ZoneSpec ZoneSpec::make(double a) {
    if (!(a > 0 && a < 1)) fail(ErrorCode::DomainError, "zone parameter must lie in (0, 1), got " + num(a));
    return ZoneSpec{a};
}
double ZoneSpec::w3() const { return std::sqrt(1.0 - a * a); }
double ZoneSpec::theta1() const { return std::acos(a); }

double D(double H, double t, double x) {
    double N = H * x * x + t - H * t * t;
    double r = (x / N) * (x / N) - 1.0;
    if (r < 0) {
        if (r > -1e-12) return 0.0;
        fail(ErrorCode::RadicandNegative, "D(" + num(H) + ", " + num(t) + ", " + num(x) + ") has radicand " + num(r));
    }
    return std::sqrt(r);
}

double profile_x3(double H, double t, double x1) {
    DelaunayParams d{H, t};
    d.validate();
    double lo = d.window_lo(), hi = d.window_hi();
    check_in(x1, lo, hi, "profile height");
    x1 = std::clamp(x1, lo, hi);
    return d.neck_at_t() ? slope_integral(d, t, x1) : slope_integral(d, x1, t);
}

double profile_x3_max(double H, double t) {
    DelaunayParams d{H, t};
    d.validate();
    return slope_integral(d, d.window_lo(), d.window_hi());
}

double profile_c(double H, double t, double x3) {
    DelaunayParams d{H, t};
    d.validate();
    double y = std::fabs(x3);
    if (y == 0.0) return t;
    double ymax = profile_x3_max(H, t);
    if (y > ymax * (1 + 1e-13))
        fail(ErrorCode::OutOfWindow, "x3 = " + num(x3) + " beyond the profile window " + num(ymax));
    if (y >= ymax) return d.neck_at_t() ? d.window_hi() : d.window_lo();
    auto f = [&](double x1) { return profile_x3(H, t, x1) - y; };
    return detail::bisect_root(f, d.window_lo(), d.window_hi(), kRootTol, "profile_c");
}

double profile_dc(double H, double t, double x3) {
    if (x3 == 0.0) return 0.0;
    DelaunayParams d{H, t};
    double x = profile_c(H, t, x3);
    double p = d.p(), q = d.q();
    double N = H * x * x + t - H * t * t;
    double R = H * std::sqrt(std::max((q * q - x * x) * (x * x - p * p), 0.0));
    double branch = d.neck_at_t() ? 1.0 : -1.0;
    return (x3 > 0 ? branch : -branch) * R / N;
}

double profile_ddc(double H, double t, double x3) {
    DelaunayParams d{H, t};
    double x = profile_c(H, t, x3);
    double p2 = d.p() * d.p(), q2 = d.q() * d.q();
    double N = H * x * x + t - H * t * t;
    double P = (q2 - x * x) * (x * x - p2);
    double dP = 2.0 * x * (q2 + p2 - 2.0 * x * x);
    return H * H * (0.5 * dP * N - P * 2.0 * H * x) / (N * N * N);
}

double x_star(double a, double H, double t) {
    DelaunayParams d{H, t};
    d.validate();
    check_in(a, d.p(), d.q(), "x_star height");
    a = std::clamp(a, d.p(), d.q());
    return t >= a ? slope_integral(d, a, t) : -slope_integral(d, t, a);
}

double H_of_t(ZoneSpec zone, double t) {
    if (t == 1.0) return 1.0;
    const double a = zone.a, w = zone.w3();
    auto g = [&](double H) { return x_star(a, H, t) - w; };
    for (double dH = 1e-3; dH <= 0.5; dH *= 2) {
        double lo = 1.0 - dH, hi = 1.0 + dH;
        double glo = 0, ghi = 0;
        try {
            glo = g(lo);
            ghi = g(hi);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::OutOfWindow) break;
            throw;
        }
        if (glo >= 0 && ghi <= 0) return detail::bisect_root(g, lo, hi, kRootTol, "H_of_t");
    }
    fail(ErrorCode::NoBracket, "H_of_t: no bracket for a = " + num(a) + ", t = " + num(t));
}

double tilde_c(ZoneSpec zone, double t, double x3) {
    check_in(std::fabs(x3), 0.0, zone.w3(), "tilde_c x3");
    return profile_c(H_of_t(zone, t), t, x3);
}

double hat_c(ZoneSpec zone, double t, double x3) {
    check_in(std::fabs(x3), 0.0, zone.w3(), "hat_c x3");
    return profile_c(1.0, t, x3);
}

namespace {
void check_undulary_t(double t) {
    if (!(t > 0 && t < 0.5)) fail(ErrorCode::DomainError, "undulary neck must lie in (0, 1/2), got " + num(t));
}
}  // namespace

double undulary_half_period(double t) {
    check_undulary_t(t);
    return profile_x3_max(1.0, t);
}

double undulary(double t, double x3) {
    check_undulary_t(t);
    double hp = undulary_half_period(t);
    if (std::fabs(x3) > hp * (1 + 1e-13))
        fail(ErrorCode::BeyondBulge, "x3 = " + num(x3) + " beyond the half-period " + num(hp));
    return profile_c(1.0, t, x3);
}

Point undulary_circle_hit(double t) {
    check_undulary_t(t);
    auto phi = [t](double x1) {
        double x3 = profile_x3(1.0, t, x1);
        return x1 * x1 + x3 * x3 - 1.0;
    };
    if (phi(1.0 - t) < 0)
        fail(ErrorCode::NoIntersection, "undulary with neck " + num(t) + " stays inside the unit circle");
    double x1 = detail::bisect_root(phi, t, 1.0 - t, kRootTol, "undulary_circle_hit");
    return {profile_x3(1.0, t, x1), x1};
}

double undulary_height_hit(double t, double a) {
    check_undulary_t(t);
    if (!(a > t && a < 1.0 - t))
        fail(ErrorCode::OutOfWindow, "height " + num(a) + " outside (t, 1-t) for t = " + num(t));
    return profile_x3(1.0, t, a);
}

CurvatureLaw cmc_law(double H) {
    return [H](double, const State& q) { return 2.0 * H - std::cos(q.theta) / q.x1; };
}

CurvatureProfile cmc_profile(double H, double t, double s_lo, double s_hi) {
    CurvatureProfile p;
    p.s_lo = s_lo;
    p.s_hi = s_hi;
    p.kappa = cmc_law(H);
    p.s_start = 0.0;
    p.seed = {0.0, t, 0.0};
    return p;
}

PlanarCurve sample_profile(double H, double t, double x3_max, int n) {
    if (n < 2) fail(ErrorCode::DomainError, "sample_profile needs at least two samples");
    PlanarCurve c;
    c.samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x3 = -x3_max + 2.0 * x3_max * i / (n - 1);
        double x1 = profile_c(H, t, x3);
        double dc = profile_dc(H, t, x3);
        double ddc = profile_ddc(H, t, x3);
        Sample s{0.0, {x3, x1}, std::atan(dc), graph_kappa(dc, ddc)};
        if (!c.samples.empty()) s.s = c.samples.back().s + dist(c.samples.back().pos, s.pos);
        c.samples.push_back(s);
    }
    return c;
}

}  // namespace cmczone
