#include "cmczone/rigidity.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cmczone/curve.hpp"
#include "cmczone/delaunay.hpp"
#include "cmczone/elliptic.hpp"
#include "cmczone/error.hpp"
#include "numerics.hpp"

namespace cmczone::rigidity {

namespace {

constexpr double kSqrt3Over2 = 0.86602540378443864676;
constexpr double kEdgeTol = 1e-12;

void check_a(double a) {
    if (!(a > 0 && a < 1)) fail(ErrorCode::DomainError, "zone parameter must lie in (0, 1), got " + std::to_string(a));
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

double f_elliptic(double a, double t) {
    check_a(a);
    double k = modulus_of(t);
    double th = amplitude_of(a, t);
    EllipticArgs args{k, th};
    return (k - t / k) * ellip_F(args) + (t / k) * ellip_E(args) - std::sqrt(1.0 - a * a);
}

double f_quadrature(double a, double t) {
    check_a(a);
    return x_star(a, 1.0, t) - std::sqrt(1.0 - a * a);
}

double g(double a) {
    check_a(a);
    double w = std::sqrt(1.0 - a * a);
    return -std::log((1.0 + w) / a) + 1.0 / w;
}

double h(double a) {
    check_a(a);
    double w2 = 1.0 - a * a;
    return std::log((1.0 + std::sqrt(w2)) / a) + (a * a - 2.0) / (w2 * std::sqrt(w2));
}

double compute_a0(double tol) {
    if (!(tol > 0)) fail(ErrorCode::DomainError, "compute_a0 needs tol > 0");
    // g increases on (0, 1); g(0.51) < 0 < g(0.99) brackets its only zero.
    return detail::bisect_root([](double a) { return g(a); }, 0.51, 0.99, tol, "compute_a0");
}

double a0() {
    static const double value = compute_a0(1e-13);
    return value;
}

RigidityConstants constants() { return {a0(), kSqrt3Over2}; }

RigidityClass classify(double a) {
    check_a(a);
    RigidityClass c;
    c.strong_h_plus = a >= kSqrt3Over2 - kEdgeTol;
    c.strong_h_minus = false;
    c.local_h_plus = a >= a0() - kEdgeTol;
    c.local_h_minus = a > a0() + kEdgeTol;
    return c;
}

Derivatives fd_derivatives(const std::function<double(double)>& fn, double x, double h0) {
    double f0 = fn(x);
    auto d1 = [&](double hh) { return (fn(x + hh) - fn(x - hh)) / (2 * hh); };
    auto d2 = [&](double hh) { return (fn(x + hh) - 2 * f0 + fn(x - hh)) / (hh * hh); };
    auto extrapolate = [](double a, double b, double c) {
        double r1 = (4 * b - a) / 3;
        double r2 = (4 * c - b) / 3;
        return (16 * r2 - r1) / 15;
    };
    return {extrapolate(d1(h0), d1(h0 / 2), d1(h0 / 4)), extrapolate(d2(h0), d2(h0 / 2), d2(h0 / 4))};
}

VerificationReport verify_lemma_h1(double a, double eta, int n) {
    Stopwatch clock;
    check_a(a);
    if (!(eta > 0 && eta < a && eta < 0.5) || n < 1)
        fail(ErrorCode::DomainError, "verify_lemma_h1 needs 0 < eta < min(a, 1/2) and n >= 1");
    VerificationReport r;
    r.lemma = "h1";
    r.tolerance = 0.0;
    const double A0 = a0();
    int pattern = a > A0 + kEdgeTol ? 1 : (a < A0 - kEdgeTol ? 2 : 3);
    // Expected sign of f below and above t = 1.
    int below = pattern == 2 ? +1 : -1;
    int above = pattern == 1 ? +1 : -1;
    r.data["a"] = a;
    r.data["eta"] = eta;
    r.data["pattern"] = pattern;
    for (int i = 0; i < n; ++i) {
        double frac = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        double d = eta * std::pow(1e-2, frac);
        for (int side : {-1, +1}) {
            double t = 1.0 + side * d;
            r.grid.push_back(t);
            nlohmann::json where{{"t", t}};
            try {
                double v = f(a, t);
                where["f"] = v;
                r.check((side < 0 ? below : above) * v, where, true);
            } catch (const Error& e) {
                where["error"] = e.what();
                r.check(-std::numeric_limits<double>::infinity(), where, true);
            }
        }
    }
    r.wall_seconds = clock.seconds();
    return r;
}

VerificationReport verify_lemma_tundu(const std::vector<double>& t_grid) {
    Stopwatch clock;
    VerificationReport r;
    r.lemma = "tundu";
    r.tolerance = 0.0;
    nlohmann::json values = nlohmann::json::array();
    for (double t : t_grid) {
        r.grid.push_back(t);
        nlohmann::json where{{"t", t}};
        double hp = undulary_half_period(t);
        double u = 0.0;
        if (hp >= 0.5) {
            u = undulary(t, 0.5);
        } else {
            // The half-period ends before x3 = 1/2; the profile never exceeds its bulge 1 - t.
            u = 1.0 - t;
            where["bulge_bound"] = true;
        }
        where["u_half"] = u;
        where["half_period"] = hp;
        values.push_back(where);
        r.check(kSqrt3Over2 - u, where, true);
    }
    r.data["values"] = values;
    r.wall_seconds = clock.seconds();
    return r;
}

VerificationReport verify_lemma_htwith1(const std::vector<double>& a_grid, const std::vector<double>& t_grid) {
    Stopwatch clock;
    VerificationReport r;
    r.lemma = "htwith1";
    r.tolerance = 0.0;
    const double A0 = a0();
    nlohmann::json values = nlohmann::json::array();
    for (double a : a_grid) {
        int pattern = a > A0 + kEdgeTol ? 1 : (a < A0 - kEdgeTol ? 2 : 3);
        for (double t : t_grid) {
            r.grid.push_back({a, t});
            int expected = 0;  // sign of H - 1
            if (pattern == 1) expected = t < 1 ? -1 : +1;
            if (pattern == 2) expected = t < 1 ? +1 : -1;
            if (pattern == 3) expected = -1;
            nlohmann::json where{{"a", a}, {"t", t}, {"pattern", pattern}};
            try {
                double H = H_of_t(ZoneSpec::make(a), t);
                where["H"] = H;
                values.push_back(where);
                r.check(expected * (H - 1.0), where, true);
            } catch (const Error& e) {
                where["error"] = e.what();
                values.push_back(where);
                r.check(-std::numeric_limits<double>::infinity(), where, true);
            }
        }
    }
    r.data["values"] = values;
    r.wall_seconds = clock.seconds();
    return r;
}

VerificationReport verify_slice_curvatures(const std::vector<double>& t_grid) {
    Stopwatch clock;
    VerificationReport r;
    r.lemma = "slices";
    r.tolerance = 1e-12;
    nlohmann::json values = nlohmann::json::array();
    for (double t : t_grid) {
        r.grid.push_back(t);
        if (!(t >= 0.5 && t < 1.0)) fail(ErrorCode::DomainError, "slice heights must lie in [1/2, 1)");
        if (t <= kSqrt3Over2) {
            // Cylinder of radius t across the zone.
            auto prof = CurvatureProfile::of_arclength([](double) { return 0.0; }, 0.0, 1.0, 0.0, {-0.5, t}, 0.0);
            PlanarCurve c = reconstruct(prof, 1e-2);
            double worst = 0.0, hmax = -1e300;
            for (const auto& s : c.samples) {
                double H = mean_curvature(s);
                worst = std::max(worst, std::fabs(H - 1.0 / (2 * t)));
                hmax = std::max(hmax, H);
            }
            nlohmann::json where{{"t", t}, {"kind", "cylinder"}, {"H", hmax}, {"error", worst}};
            values.push_back(where);
            r.check(r.tolerance - worst, where);
            r.check(1.0 - hmax, where, t > 0.5);
        } else {
            // Arc through (-1/2, sqrt3/2), (0, t), (1/2, sqrt3/2) about a centre on the x1-axis.
            double c0 = (t * t - 1.0) / (2 * t - std::sqrt(3.0));
            double rad = t - c0;
            double theta0 = std::atan2(0.5, std::sqrt(3.0) / 2 - c0);
            double len = 2 * rad * std::asin(1.0 / (2 * rad));
            auto prof = CurvatureProfile::of_arclength([rad](double) { return 1.0 / rad; }, 0.0, len, 0.0,
                                                       {-0.5, std::sqrt(3.0) / 2}, theta0);
            PlanarCurve c = reconstruct(prof, len / 400);
            double h_edge = 0.5 * (1.0 / rad + std::sqrt(4 * rad * rad - 1.0) / (std::sqrt(3.0) * rad));
            double hmax = -1e300;
            std::size_t imax = 0;
            for (std::size_t i = 0; i < c.size(); ++i) {
                double H = mean_curvature(c.samples[i]);
                if (H > hmax) {
                    hmax = H;
                    imax = i;
                }
            }
            double edge_err = std::fabs(mean_curvature(c.samples.front()) - h_edge);
            double x3_at_max = c.samples[imax].pos.x3;
            nlohmann::json where{{"t", t},          {"kind", "arc"},       {"radius", rad}, {"H_max", hmax},
                                 {"H_edge", h_edge}, {"x3_at_max", x3_at_max}};
            values.push_back(where);
            r.check(1e-9 - edge_err, where);
            r.check(1e-9 - std::fabs(std::fabs(x3_at_max) - 0.5), where);
            r.check(h_edge + 1e-12 - hmax, where);
            r.check(1.0 - hmax, where, true);
        }
    }
    r.data["values"] = values;
    r.wall_seconds = clock.seconds();
    return r;
}

VerificationReport verify_appendix_derivatives(const std::vector<double>& a_grid) {
    Stopwatch clock;
    VerificationReport r;
    r.lemma = "appendix-derivatives";
    VerificationReport first, second, at_a0;
    first.lemma = "df/dt at t=1 vs g";
    first.tolerance = 1e-5;
    second.lemma = "d2f/dt2 at t=1 vs h";
    second.tolerance = 1e-4;
    at_a0.lemma = "h(a0) vs -(1-a0^2)^(-3/2)";
    at_a0.tolerance = 1e-6;
    for (double a : a_grid) {
        r.grid.push_back(a);
        first.grid.push_back(a);
        second.grid.push_back(a);
        Derivatives d = fd_derivatives([a](double t) { return f(a, t); }, 1.0, 1e-3);
        double ga = g(a), ha = h(a);
        first.check(first.tolerance - std::fabs(d.first - ga), {{"a", a}, {"fd", d.first}, {"g", ga}});
        second.check(second.tolerance - std::fabs(d.second - ha), {{"a", a}, {"fd", d.second}, {"h", ha}});
    }
    double A0 = a0();
    double derived = -std::pow(1.0 - A0 * A0, -1.5);
    at_a0.grid.push_back(A0);
    at_a0.check(at_a0.tolerance - std::fabs(h(A0) - derived), {{"a0", A0}, {"h", h(A0)}, {"derived", derived}});
    r.tolerance = 1e-4;
    r.add_section(std::move(first));
    r.add_section(std::move(second));
    r.add_section(std::move(at_a0));
    r.wall_seconds = clock.seconds();
    return r;
}

VerificationReport verify_elliptic_forms(int n) {
    Stopwatch clock;
    if (n < 2) fail(ErrorCode::DomainError, "verify_elliptic_forms needs n >= 2");
    VerificationReport r;
    r.lemma = "elliptic-forms";
    VerificationReport grid, at_one;
    grid.lemma = "closed form vs quadrature";
    grid.tolerance = 1e-7;
    at_one.lemma = "f(a, 1) = 0";
    at_one.tolerance = 1e-9;
    for (int i = 0; i < n; ++i) {
        double a = 0.1 + 0.8 * i / (n - 1);
        double w = std::min(0.05, a / 2);
        for (int j = 0; j < n; ++j) {
            double t = 1.0 - w + 2 * w * j / (n - 1);
            grid.grid.push_back({a, t});
            double fe = f_elliptic(a, t), fq = f_quadrature(a, t);
            grid.check(grid.tolerance - std::fabs(fe - fq), {{"a", a}, {"t", t}, {"elliptic", fe}, {"quadrature", fq}});
        }
        at_one.grid.push_back(a);
        double e1 = f_elliptic(a, 1.0), q1 = f_quadrature(a, 1.0);
        at_one.check(at_one.tolerance - std::max(std::fabs(e1), std::fabs(q1)),
                     {{"a", a}, {"elliptic", e1}, {"quadrature", q1}});
    }
    r.tolerance = 1e-7;
    r.add_section(std::move(grid));
    r.add_section(std::move(at_one));
    r.wall_seconds = clock.seconds();
    return r;
}

}  // namespace cmczone::rigidity
