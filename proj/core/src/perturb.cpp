#include "cmczone/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cmczone/delaunay.hpp"
#include "cmczone/error.hpp"
#include "cmczone/rigidity.hpp"
#include "cmczone/roundcorner.hpp"
#include "numerics.hpp"

namespace cmczone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSCut = 1e-3;
constexpr double kOverhang = 0.05;  // extra parameter range on each input past the corner
constexpr double kCircleTol = 1e-10;

double wrap(double a) { return std::remainder(a, 2 * kPi); }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void check_a(double a) {
    if (!(a > 0 && a < 1)) fail(ErrorCode::DomainError, "zone parameter a must lie in (0, 1), got " + num(a));
}

double circle_theta(Point q) { return std::atan2(-q.x3, q.x1); }
// Arc length along the unit circle from (-1, 0) to q.
double polar_from_left(Point q) { return std::atan2(q.x1, -q.x3); }

CurvatureLaw unit_law() {
    return [](double, const State&) { return 1.0; };
}

CurvatureProfile circle_through(Point q, double s_lo, double s_hi) {
    return {s_lo, s_hi, unit_law(), 0.0, {q.x3, q.x1, circle_theta(q)}};
}

// Arc length from the symmetric point (0, x1_sym) back to the first crossing
// with the unit circle, marching with the same RK4 steps as the evaluator.
double arc_to_circle(const CurvatureLaw& law, double x1_sym, double h) {
    auto F = [](const State& q) { return q.x3 * q.x3 + q.x1 * q.x1 - 1.0; };
    State y{0.0, x1_sym, 0.0};
    const double f0 = F(y);
    if (f0 == 0) fail(ErrorCode::NoIntersection, "symmetric point lies on the unit circle");
    double s = 0;
    const auto max_steps = static_cast<long>(20.0 / h) + 1;
    for (long k = 0; k < max_steps; ++k) {
        State nx = rk4_step(law, s, y, -h);
        if (!(nx.x1 > 0)) fail(ErrorCode::DomainExit, "profile reached the axis before the unit circle");
        if ((F(nx) > 0) != (f0 > 0)) {
            auto g = [&](double u) { return F(rk4_step(law, s, y, -u)); };
            double u = detail::bisect_root(g, 0.0, h, 1e-15, "corner on the unit circle");
            return u - s;
        }
        y = nx;
        s -= h;
    }
    fail(ErrorCode::NoIntersection, "profile never meets the unit circle");
}

nlohmann::json join_log(const CornerJoin& j) {
    nlohmann::json out = to_json(j.params);
    out["s1"] = j.s1;
    out["s2"] = j.s2;
    out["center"] = {j.center.x3, j.center.x1};
    out["arc_span"] = j.arc_span;
    out["arc_length"] = j.arc_length;
    out["min_margin"] = j.checks.min_margin;
    return out;
}

CornerJoin glue_corner(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, double delta, int sigma) {
    try {
        return auto_glue(r1, r2, p, delta, sigma);
    } catch (const Error& e) {
        fail(ErrorCode::GlueFailure, std::string("round corner failed: ") + e.what());
    }
}

// Builds the symmetric meridian from a profile law seeded at (0, x1_sym) with
// theta = 0: circle, corner, profile up to the axis of symmetry, then the
// mirrored corner glued independently and the circle down to the other pole.
PerturbationResult assemble(Mode mode, double a, const CurvatureLaw& law, double x1_sym, nlohmann::json log) {
    const double w = std::sqrt(1 - a * a);
    const int sigma = orientation_of(mode);
    const double h = std::min(1e-3, x1_sym / 20);
    const double L = arc_to_circle(law, x1_sym, h);

    CurveEvaluator r2({-kOverhang, L, law, L, {0.0, x1_sym, 0.0}}, h);
    const Point p = r2.state_at(0.0).pos();
    if (!(std::fabs(p.x3) < w && p.x1 > a))
        fail(ErrorCode::GlueFailure, "corner (" + num(p.x3) + ", " + num(p.x1) + ") lies outside the zone");
    const double delta = std::min({(p.x1 - a) / 2, (w - std::fabs(p.x3)) / 2, std::fabs(p.x3) / 2});
    CurveEvaluator r1(circle_through(p, kSCut - polar_from_left(p), kOverhang), h);
    CornerJoin left = glue_corner(r1, r2, p, delta, sigma);

    CurveEvaluator r1m({-L, kOverhang, law, -L, {0.0, x1_sym, 0.0}}, h);
    const Point q = r1m.state_at(0.0).pos();
    CurveEvaluator r2m(circle_through(q, -kOverhang, (kPi - kSCut) - polar_from_left(q)), h);
    CornerJoin right = glue_corner(r1m, r2m, q, delta, sigma);

    PerturbationResult res;
    res.mode = mode;
    res.a = a;
    res.delta = delta;
    res.s_cut = kSCut;
    auto& out = res.curve.samples;
    out = left.curve.samples;
    res.seam = out.size() - 1;
    const Sample top = out.back();
    const auto& rs = right.curve.samples;
    const double ds = top.s - rs.front().s;
    const double dth = 2 * kPi * std::round((top.theta - rs.front().theta) / (2 * kPi));
    for (std::size_t i = 1; i < rs.size(); ++i) out.push_back({rs[i].s + ds, rs[i].pos, rs[i].theta + dth, rs[i].kappa});
    const double s0 = out.front().s;
    for (auto& smp : out) smp.s -= s0;

    double rmin = std::numeric_limits<double>::infinity(), x1max = 0;
    for (const auto& smp : out) {
        rmin = std::min(rmin, norm(smp.pos));
        x1max = std::max(x1max, smp.pos.x1);
    }
    log["step"] = h;
    log["symmetric_point"] = {0.0, x1_sym};
    log["arc_to_corner"] = L;
    log["corner"] = {p.x3, p.x1};
    log["delta"] = delta;
    log["left_corner"] = join_log(left);
    log["right_corner"] = join_log(right);
    log["samples"] = out.size();
    log["seam"] = res.seam;
    log["s_cut"] = kSCut;
    log["sup_distance"] = sup_distance_to_sphere(res.curve);
    log["min_radius"] = rmin;
    log["max_x1"] = x1max;
    res.construction_log = std::move(log);

    res.certificate = certify(res, kDefaultHTol);
    if (!res.certificate.pass) {
        std::string msg = std::string("certificate failed for ") + to_string(mode) + ":";
        for (const auto& s : res.certificate.sections)
            if (!s.pass) msg += " " + s.lemma + " at " + s.witness.dump() + " (margin " + num(s.min_margin) + ")";
        fail(ErrorCode::VerificationFailure, msg);
    }
    return res;
}

struct Crossing {
    double x3 = 0.0;
    double x1 = 0.0;
    double slope = 0.0;
};

// Largest x3 in (0, w) where the H = 1 profile through (0, tp) meets the unit
// circle; sign = +1 when the profile starts inside the circle.
Crossing find_crossing(double a, double tp, int sign) {
    const double w = std::sqrt(1 - a * a);
    auto diff = [tp](double x3) { return profile_c(1.0, tp, x3) - std::sqrt(1 - x3 * x3); };
    double prev = w, dprev = 0;
    try {
        dprev = diff(w);
    } catch (const Error& e) {
        fail(ErrorCode::CrossingNotFound, std::string("profile does not reach the zone edge: ") + e.what());
    }
    if (!(sign * dprev > 0))
        fail(ErrorCode::CrossingNotFound, "profile through (0, " + num(tp) + ") does not cross the circle inside the zone of a = " + num(a));
    constexpr int kScanPoints = 200;
    for (int i = 1; i <= kScanPoints; ++i) {
        double x = w * (1 - static_cast<double>(i) / kScanPoints);
        double d = diff(x);
        if (sign * d <= 0) {
            Crossing c;
            c.x3 = detail::bisect_root(diff, x, prev, 1e-15, "crossing with the unit circle");
            c.x1 = std::sqrt(1 - c.x3 * c.x3);
            c.slope = profile_dc(1.0, tp, c.x3);
            if (!(c.x1 > a)) fail(ErrorCode::CrossingNotFound, "crossing height does not exceed a");
            return c;
        }
        prev = x;
    }
    fail(ErrorCode::CrossingNotFound, "no sign change of the profile against the circle on (0, w)");
}

PerturbationResult build_local(Mode mode, double a, std::optional<double> tp_opt) {
    check_a(a);
    const int sign = orientation_of(mode);
    auto attempt = [&](double tp) {
        if (sign > 0 ? !(tp > 0 && tp < 1) : !(tp > 1))
            fail(ErrorCode::DomainError, "profile height " + num(tp) + " on the wrong side of 1");
        Crossing c = find_crossing(a, tp, sign);
        const double bound = -std::sqrt(1 / (a * a) - 1);
        nlohmann::json log;
        log["a"] = a;
        log[sign > 0 ? "t_prime" : "t0_prime"] = tp;
        log["x3_hat"] = c.x3;
        log["x1_hat"] = c.x1;
        log["slope_at_crossing"] = c.slope;
        log["slope_bound"] = bound;
        log["slope_condition"] = sign > 0 ? c.slope > bound : c.slope < bound;
        return assemble(mode, a, cmc_law(1.0), tp, std::move(log));
    };
    if (tp_opt) return attempt(*tp_opt);
    ErrorCode last_code = ErrorCode::CrossingNotFound;
    std::string last;
    double d = 0.01;
    for (int k = 0; k <= 8; ++k, d /= 2) {
        try {
            return attempt(1 - sign * d);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CrossingNotFound && e.code() != ErrorCode::GlueFailure) throw;
            last_code = e.code();
            last = e.what();
        }
    }
    fail(last_code, "no admissible profile height near 1: " + last);
}

}  // namespace

const char* to_string(Mode mode) noexcept {
    switch (mode) {
        case Mode::GlobalHMinus: return "global_h_minus";
        case Mode::GlobalHPlus: return "global_h_plus";
        case Mode::LocalHPlus: return "local_h_plus";
        case Mode::LocalHMinus: return "local_h_minus";
    }
    return "unknown";
}

Mode parse_mode(const std::string& name) {
    for (Mode m : {Mode::GlobalHMinus, Mode::GlobalHPlus, Mode::LocalHPlus, Mode::LocalHMinus}) {
        std::string canon = to_string(m), cli = canon;
        cli.erase(std::remove(cli.begin(), cli.end(), '_'), cli.end());
        cli.insert(cli.find('h'), "-");
        if (name == canon || name == cli) return m;
    }
    fail(ErrorCode::DomainError, "unknown perturbation mode '" + name + "'");
}

int orientation_of(Mode mode) noexcept {
    return mode == Mode::GlobalHPlus || mode == Mode::LocalHPlus ? +1 : -1;
}

PerturbationResult build_global_h_minus(double a) {
    check_a(a);
    const double ap = (1 + a) / 2;
    nlohmann::json log;
    log["a"] = a;
    log["a_prime"] = ap;
    // Reflection of the unit circle in the line x1 = a': centre (0, 2a'), top at 2a' + 1.
    return assemble(Mode::GlobalHMinus, a, unit_law(), 2 * ap + 1, std::move(log));
}

PerturbationResult build_global_h_plus(double a, std::optional<double> t) {
    check_a(a);
    const double w = std::sqrt(1 - a * a);
    if (!(2 * w - 1 > 0))
        fail(ErrorCode::WindowFailure, "a = " + num(a) + " >= sqrt(3)/2: no undulary fits inside the zone");
    constexpr double kTMin = 1e-4;

    auto window = [&](double tt, double margin, nlohmann::json& log) {
        log = nlohmann::json::object();
        log["a"] = a;
        log["t"] = tt;
        log["margin"] = margin;
        Point Q;
        try {
            Q = undulary_circle_hit(tt);
        } catch (const Error&) {
            return false;
        }
        log["Q"] = {Q.x3, Q.x1};
        if (!(Q.x1 > a)) return false;
        if (a <= tt) return true;
        double xp = 0;
        try {
            xp = undulary_height_hit(tt, a);
        } catch (const Error&) {
            return false;
        }
        log["x3_P"] = xp;
        return xp < w - margin;
    };

    nlohmann::json log;
    if (t) {
        if (!(*t > 0 && *t < 0.5)) fail(ErrorCode::DomainError, "undulary neck must lie in (0, 1/2)");
        if (!window(*t, 0.0, log)) fail(ErrorCode::WindowFailure, "t = " + num(*t) + " violates the undulary window");
        return assemble(Mode::GlobalHPlus, a, cmc_law(1.0), *t, std::move(log));
    }
    const double margin = std::min(0.02, (2 * w - 1) / 2);
    std::string last = "window never satisfied";
    for (double tt = 0.25; tt >= kTMin; tt /= 2) {
        if (!window(tt, margin, log)) continue;
        try {
            return assemble(Mode::GlobalHPlus, a, cmc_law(1.0), tt, log);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::GlueFailure) throw;
            last = e.what();
        }
    }
    fail(ErrorCode::WindowFailure, "no admissible undulary neck above " + num(kTMin) + ": " + last);
}

PerturbationResult build_local_h_plus(double a, std::optional<double> t_prime) {
    return build_local(Mode::LocalHPlus, a, t_prime);
}

PerturbationResult build_local_h_minus(double a, std::optional<double> t0_prime) {
    return build_local(Mode::LocalHMinus, a, t0_prime);
}

PerturbationResult build(Mode mode, double a, std::optional<double> param) {
    switch (mode) {
        case Mode::GlobalHMinus: return build_global_h_minus(a);
        case Mode::GlobalHPlus: return build_global_h_plus(a, param);
        case Mode::LocalHPlus: return build_local_h_plus(a, param);
        case Mode::LocalHMinus: return build_local_h_minus(a, param);
    }
    fail(ErrorCode::DomainError, "unknown mode");
}

double sup_distance_to_sphere(const PlanarCurve& curve) {
    double d = 0;
    for (const auto& smp : curve.samples) d = std::max(d, std::fabs(norm(smp.pos) - 1));
    return d;
}

VerificationReport certify(const PerturbationResult& r, double tol) {
    const auto& c = r.curve.samples;
    const int sigma = orientation_of(r.mode);
    const double w = std::sqrt(1 - r.a * r.a);
    VerificationReport rep;
    rep.lemma = std::string("perturbation/") + to_string(r.mode);
    rep.tolerance = tol;
    rep.data["a"] = r.a;
    rep.data["samples"] = c.size();
    if (c.size() < 3 || r.seam >= c.size()) {
        rep.check(-1.0, {{"reason", "curve too short or seam out of range"}});
        return rep;
    }

    VerificationReport hb;
    hb.lemma = "h_bound";
    hb.tolerance = tol;
    for (std::size_t i = 0; i < c.size(); ++i) {
        double margin = std::numeric_limits<double>::quiet_NaN(), H = margin;
        try {
            H = mean_curvature(c[i]);
            margin = sigma * (H - 1) / std::max(1.0, std::fabs(H));
        } catch (const Error&) {
        }
        hb.check(margin, {{"index", i}, {"s", c[i].s}, {"H", H}});
    }

    VerificationReport emb;
    emb.lemma = "embedded";
    {
        Intersection x = self_intersects(r.curve);
        emb.check(x.found ? -1.0 : 0.0, x.found ? nlohmann::json{{"segments", {x.first, x.second}}} : nlohmann::json{});
    }

    VerificationReport id;
    id.lemma = "identity_outside_zone";
    id.tolerance = kCircleTol;
    {
        auto off = [](const Sample& smp) {
            return std::max({std::fabs(norm(smp.pos) - 1), std::fabs(wrap(smp.theta - circle_theta(smp.pos))),
                             std::fabs(smp.kappa - 1)});
        };
        std::size_t i0 = 0;
        while (i0 < c.size() && off(c[i0]) <= kCircleTol) ++i0;
        std::size_t i1 = c.size();
        while (i1 > i0 && off(c[i1 - 1]) <= kCircleTol) --i1;
        if (i0 == 0 || i1 == c.size()) {
            id.check(-1.0, {{"reason", "curve does not start and end on the unit circle"}});
        } else {
            id.check(w + c[i0 - 1].pos.x3, {{"index", i0 - 1}, {"side", "left"}, {"x3", c[i0 - 1].pos.x3}});
            id.check(w - c[i1].pos.x3, {{"index", i1}, {"side", "right"}, {"x3", c[i1].pos.x3}});
        }
        id.check(kCircleTol - std::fabs(polar_from_left(c.front().pos) - r.s_cut), {{"index", 0}, {"cap", "left"}});
        id.check(kCircleTol - std::fabs(std::atan2(c.back().pos.x1, c.back().pos.x3) - r.s_cut),
                 {{"index", c.size() - 1}, {"cap", "right"}});
        id.data["perturbed_range"] = {i0, i1};
    }

    VerificationReport sym;
    sym.lemma = "symmetry";
    sym.tolerance = 1e-9;
    {
        const Sample& top = c[r.seam];
        sym.check(-hausdorff_to(r.curve, mirror(r.curve, top.s)), {{"check", "hausdorff to mirror image"}});
        sym.check(-std::fabs(top.pos.x3), {{"check", "seam on the x1-axis"}, {"index", r.seam}});
        sym.check(-std::fabs(wrap(top.theta)), {{"check", "seam tangent horizontal"}, {"index", r.seam}});
    }

    VerificationReport arc;
    arc.lemma = "arclength";
    arc.tolerance = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        const Sample &u = c[i - 1], &v = c[i];
        double ds = v.s - u.s, dth = v.theta - u.theta, dk = std::fabs(v.kappa - u.kappa);
        double half = dth / 2;
        double sinc = half == 0 ? 1.0 : std::sin(half) / half;
        Point chord = (ds * sinc) * tangent(u.theta + half);
        double err_pos = dist(v.pos - u.pos, chord);
        double err_th = std::fabs(dth + 0.5 * (u.kappa + v.kappa) * ds);
        // s is stored absolutely, so ds itself carries a few ulps of s.
        double ds_floor = 4 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(u.s), std::fabs(v.s));
        double k_abs = std::max(std::fabs(u.kappa), std::fabs(v.kappa));
        double margin = std::min(1e-10 + 0.25 * dk * ds * ds + ds_floor - err_pos,
                                 1e-10 + 0.5 * dk * ds + k_abs * ds_floor - err_th);
        if (!(ds > 0)) margin = -1.0;
        arc.check(margin, {{"index", i}, {"s", v.s}});
    }

    rep.add_section(std::move(hb));
    rep.add_section(std::move(emb));
    rep.add_section(std::move(id));
    rep.add_section(std::move(sym));
    rep.add_section(std::move(arc));
    return rep;
}

}  // namespace cmczone
