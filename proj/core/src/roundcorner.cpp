#include "cmczone/roundcorner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cmczone/error.hpp"

namespace cmczone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScan = 64;
constexpr double kMatchTol = 1e-10;

double wrap(double a) { return std::remainder(a, 2 * kPi); }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Base curve and its polished counterpart integrated side by side. Side 1 runs
// forward from s0 with mu(s - s0); side 2 runs backward from s0 with mu(s0 - s).
struct Track {
    std::vector<double> s;
    std::vector<State> base, pol;
    std::vector<double> kb, kp;
};

struct Pair {
    State b, q;
};

Track blend_track(const CurveEvaluator& base, double s0, int side, const RoundCornerParams& prm, double length,
                  bool keep) {
    const double dir = side == 1 ? 1.0 : -1.0;
    const double sk = prm.orientation * prm.K;
    const double lambda = prm.lambda;
    const CurvatureLaw& law = base.profile().kappa;
    const double h = lambda / prm.blend_steps;
    auto kappas = [&](double s, const State& b) {
        double kb = law(s, b);
        double kp = kb + (sk - kb) * scaled_mollifier(lambda, dir * (s - s0));
        return std::pair{kb, kp};
    };
    auto rhs = [&](double s, const Pair& y) {
        auto [kb, kp] = kappas(s, y.b);
        return Pair{{std::cos(y.b.theta), std::sin(y.b.theta), -kb}, {std::cos(y.q.theta), std::sin(y.q.theta), -kp}};
    };
    auto axpy = [](const Pair& y, double c, const Pair& d) {
        return Pair{{y.b.x3 + c * d.b.x3, y.b.x1 + c * d.b.x1, y.b.theta + c * d.b.theta},
                    {y.q.x3 + c * d.q.x3, y.q.x1 + c * d.q.x1, y.q.theta + c * d.q.theta}};
    };

    Track tr;
    State b0 = base.state_at(s0);
    Pair y{b0, b0};
    auto n = static_cast<long>(std::ceil(length / h - 1e-9));
    auto record = [&](double s) {
        auto [kb, kp] = kappas(s, y.b);
        tr.s.push_back(s);
        tr.base.push_back(y.b);
        tr.pol.push_back(y.q);
        tr.kb.push_back(kb);
        tr.kp.push_back(kp);
    };
    if (keep) record(s0);
    double s = s0;
    for (long k = 1; k <= n; ++k) {
        double s_next = k == n ? s0 + dir * length : s0 + dir * static_cast<double>(k) * h;
        double hh = s_next - s;
        Pair k1 = rhs(s, y);
        Pair k2 = rhs(s + hh / 2, axpy(y, hh / 2, k1));
        Pair k3 = rhs(s + hh / 2, axpy(y, hh / 2, k2));
        Pair k4 = rhs(s + hh, axpy(y, hh, k3));
        auto comb = [hh](double a, double b2, double c, double d) { return hh / 6 * (a + 2 * b2 + 2 * c + d); };
        y.b.x3 += comb(k1.b.x3, k2.b.x3, k3.b.x3, k4.b.x3);
        y.b.x1 += comb(k1.b.x1, k2.b.x1, k3.b.x1, k4.b.x1);
        y.b.theta += comb(k1.b.theta, k2.b.theta, k3.b.theta, k4.b.theta);
        y.q.x3 += comb(k1.q.x3, k2.q.x3, k3.q.x3, k4.q.x3);
        y.q.x1 += comb(k1.q.x1, k2.q.x1, k3.q.x1, k4.q.x1);
        y.q.theta += comb(k1.q.theta, k2.q.theta, k3.q.theta, k4.q.theta);
        s = s_next;
        if (!(y.q.x1 > 0)) fail(ErrorCode::DomainExit, "polished curve reached the axis");
        if (keep || k == n) record(s);
    }
    return tr;
}

Point center_of(const State& q, double sk) { return q.pos() + (1.0 / sk) * normal(q.theta); }

Point center_at(const CurveEvaluator& base, double s0, int side, const RoundCornerParams& prm) {
    Track tr = blend_track(base, s0, side, prm, prm.lambda, false);
    return center_of(tr.pol.back(), prm.orientation * prm.K);
}

nlohmann::json loc(const char* what, double s) { return {{"at", what}, {"s", s}}; }

}  // namespace

double mollifier(double lambda, double x) {
    if (x <= 0) return 0.0;
    if (x >= lambda) return 1.0;
    double e = 1.0 / x - 1.0 / (lambda - x);
    return 1.0 / (1.0 + std::exp(e));
}

double scaled_mollifier(double lambda, double x) { return mollifier(1.0, x / lambda); }

RoundCornerParams derive_geometry(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, double delta,
                                  int orientation) {
    if (orientation != 1 && orientation != -1)
        fail(ErrorCode::ConstraintViolation, "orientation must be +1 or -1");
    if (!(delta > 0)) fail(ErrorCode::ConstraintViolation, "delta must be positive");
    State q1 = r1.state_at(0.0), q2 = r2.state_at(0.0);
    if (dist(q1.pos(), p) > 1e-9 || dist(q2.pos(), p) > 1e-9)
        fail(ErrorCode::ConstraintViolation, "corner point is not r1(0) = r2(0)");

    RoundCornerParams prm;
    prm.delta = delta;
    prm.orientation = orientation;
    prm.theta1 = q1.theta;
    prm.theta2 = q2.theta;
    Point sum = tangent(q1.theta) + tangent(q2.theta);
    if (norm(sum) < 1e-12) fail(ErrorCode::ConstraintViolation, "cusp: T1 = -T2 at the corner");
    prm.theta = std::atan2(sum.x1, sum.x3);
    prm.theta_star = std::fabs(wrap(q1.theta - prm.theta));
    if (prm.theta_star < 1e-9) fail(ErrorCode::ConstraintViolation, "inputs are tangential at the corner");
    Point t2 = tangent(q2.theta), n1 = normal(q1.theta);
    double side = t2.x3 * n1.x3 + t2.x1 * n1.x1;
    if ((side > 0 ? 1 : -1) != orientation)
        fail(ErrorCode::ConstraintViolation, "sign of T2.n1 does not match the requested orientation");
    prm.beta = 0.5 * std::min(prm.theta_star / 4, kPi / 4 - prm.theta_star / 2);
    if (!(prm.beta > 0)) fail(ErrorCode::ConstraintViolation, "corner too sharp: no admissible beta");
    prm.alpha = prm.beta;
    prm.delta_prime = 0.4 * delta;
    prm.d0 = 0.99 * (p.x1 - delta);
    if (!(prm.d0 > 0)) fail(ErrorCode::ConstraintViolation, "delta-ball reaches the axis");

    // Window on which both inputs stay within delta' of p and turn by less than alpha/2.
    double eps1 = std::numeric_limits<double>::infinity();
    double ksup = 0, kmax = -std::numeric_limits<double>::infinity(), kmin = std::numeric_limits<double>::infinity();
    for (const CurveEvaluator* r : {&r1, &r2}) {
        double th0 = r->state_at(0.0).theta;
        double step = std::min({r->step(), prm.delta_prime / kScan, prm.alpha / 8});
        for (int dir : {-1, +1}) {
            double good = 0;
            for (long k = 0;; ++k) {
                double s = dir * static_cast<double>(k) * step;
                if (s < r->s_lo() || s > r->s_hi()) break;
                State q = r->state_at(s);
                if (dist(q.pos(), p) > prm.delta_prime || std::fabs(wrap(q.theta - th0)) > prm.alpha / 2) break;
                double kap = r->profile().kappa(s, q);
                ksup = std::max(ksup, std::fabs(kap));
                kmax = std::max(kmax, kap);
                kmin = std::min(kmin, kap);
                good = std::fabs(s);
            }
            eps1 = std::min(eps1, good);
        }
    }
    if (!(eps1 > 0)) fail(ErrorCode::ConstraintViolation, "no window around the corner inside delta'");
    prm.eps1 = eps1;
    prm.kappa_sup = ksup;
    prm.kappa_max = kmax;
    prm.kappa_min = kmin;
    return prm;
}

HalfPolish half_polish(int side, const CurveEvaluator& base, double s0, const RoundCornerParams& prm, double tail) {
    if (side != 1 && side != 2) fail(ErrorCode::ConstraintViolation, "side must be 1 or 2");
    if (!(prm.lambda > 0) || !(prm.K > 0)) fail(ErrorCode::ConstraintViolation, "lambda and K must be positive");
    if (!(prm.K > 2 * prm.kappa_sup)) fail(ErrorCode::ConstraintViolation, "K > 2 sup|kappa| violated");
    Track tr = blend_track(base, s0, side, prm, prm.lambda + std::max(tail, 0.0), true);
    HalfPolish out;
    double sk = prm.orientation * prm.K;
    auto idx = static_cast<std::size_t>(prm.blend_steps);
    out.center = center_of(tr.pol[std::min(idx, tr.pol.size() - 1)], sk);
    std::size_t n = tr.s.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = side == 1 ? i : n - 1 - i;
        out.curve.samples.push_back({tr.s[k], tr.pol[k].pos(), tr.pol[k].theta, tr.kp[k]});
        out.base.samples.push_back({tr.s[k], tr.base[k].pos(), tr.base[k].theta, tr.kb[k]});
    }
    return out;
}

CenterMatch find_center_match(const CurveEvaluator& r1, const CurveEvaluator& r2, const RoundCornerParams& prm) {
    const double e2 = prm.eps2, lam = prm.lambda;
    if (!(e2 > 0)) fail(ErrorCode::NoMatch, "empty scan window");
    double lo1 = std::max(-e2, r1.s_lo()), hi1 = std::min(e2, r1.s_hi() - lam);
    double lo2 = std::max(-e2, r2.s_lo() + lam), hi2 = std::min(e2, r2.s_hi());
    if (!(lo1 < hi1) || !(lo2 < hi2)) fail(ErrorCode::NoMatch, "inputs too short for the scan window");
    auto O1 = [&](double s) { return center_at(r1, s, 1, prm); };
    auto O2 = [&](double s) { return center_at(r2, s, 2, prm); };

    std::vector<double> g1(kScan), g2(kScan);
    std::vector<Point> c1(kScan), c2(kScan);
    for (int i = 0; i < kScan; ++i) {
        g1[i] = lo1 + (hi1 - lo1) * i / (kScan - 1);
        g2[i] = lo2 + (hi2 - lo2) * i / (kScan - 1);
        c1[i] = O1(g1[i]);
        c2[i] = O2(g2[i]);
    }
    double best = std::numeric_limits<double>::infinity();
    int bi = 0, bj = 0;
    for (int i = 0; i < kScan; ++i)
        for (int j = 0; j < kScan; ++j) {
            double d = dist(c1[i], c2[j]);
            if (d < best) {
                best = d;
                bi = i;
                bj = j;
            }
        }

    // Damped Newton on O1(s1) - O2(s2) = 0 with a central-difference Jacobian.
    double s1 = g1[bi], s2 = g2[bj];
    Point F = c1[bi] - c2[bj];
    double nf = norm(F);
    const double hs = 1e-6 * e2;
    for (int it = 0; it < 60; ++it) {
        if (nf <= 4 * std::numeric_limits<double>::epsilon() * (1 + norm(c1[bi]))) break;
        double a1 = std::clamp(s1, lo1 + hs, hi1 - hs), a2 = std::clamp(s2, lo2 + hs, hi2 - hs);
        Point j1 = (0.5 / hs) * (O1(a1 + hs) - O1(a1 - hs));
        Point j2 = (-0.5 / hs) * (O2(a2 + hs) - O2(a2 - hs));
        double det = j1.x3 * j2.x1 - j2.x3 * j1.x1;
        if (!(std::fabs(det) > 0)) break;
        double d1 = -(F.x3 * j2.x1 - j2.x3 * F.x1) / det;
        double d2 = -(j1.x3 * F.x1 - F.x3 * j1.x1) / det;
        bool improved = false;
        for (double step = 1.0; step > 1e-6; step /= 2) {
            double t1 = std::clamp(s1 + step * d1, lo1, hi1), t2 = std::clamp(s2 + step * d2, lo2, hi2);
            Point Ft = O1(t1) - O2(t2);
            if (norm(Ft) < nf) {
                s1 = t1;
                s2 = t2;
                F = Ft;
                nf = norm(Ft);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (!(nf <= kMatchTol))
        fail(ErrorCode::NoMatch, "centre curves do not meet in the scan window (residual " + num(nf) + ")");
    CenterMatch m;
    m.s1 = s1;
    m.s2 = s2;
    m.center = O1(s1);
    m.residual = nf;
    return m;
}

CornerJoin glue(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, const RoundCornerParams& params) {
    RoundCornerParams prm = params;
    const int sigma = prm.orientation;
    const double K = prm.K, lam = prm.lambda, sk = sigma * K;
    if (!(lam > 0) || !(K > 0) || (sigma != 1 && sigma != -1))
        fail(ErrorCode::ConstraintViolation, "lambda, K must be positive and orientation +-1");
    if (!(prm.beta > 0) || !(prm.d0 > 0) || !(prm.eps2 > 0))
        fail(ErrorCode::ConstraintViolation, "corner geometry missing; derive it first");

    // Side conditions of the construction.
    prm.a_b = sigma > 0 ? K - prm.kappa_max : K + prm.kappa_min;
    prm.b_b = sigma > 0 ? K - prm.kappa_min : K + prm.kappa_max;
    VerificationReport constraints;
    constraints.lemma = "constraints";
    constraints.check(std::min(prm.alpha, prm.beta) / 2 - lam * K, {{"rule", "lambda K < min(alpha, beta)/2"}}, true);
    constraints.check(prm.d0 / 4 - lam, {{"rule", "lambda < d0/4"}}, true);
    constraints.check(K - (2 * prm.kappa_sup + 1 / prm.d0), {{"rule", "K > 2 sup|kappa| + 1/d0"}}, true);
    constraints.check(std::min(prm.a_b, 2 * prm.a_b - prm.b_b), {{"rule", "0 < a < b < 2a"}}, true);
    if (!constraints.pass)
        fail(ErrorCode::ConstraintViolation, "parameter rule violated: " + constraints.witness.dump());

    CenterMatch m = find_center_match(r1, r2, prm);
    if (!(m.s1 <= 0 && m.s2 >= 0))
        fail(ErrorCode::ConstraintViolation, "centre match at s1 = " + num(m.s1) + ", s2 = " + num(m.s2) +
                                                 " violates s1 <= 0 <= s2");
    if (dist(m.center, p) > prm.delta_prime)
        fail(ErrorCode::ConstraintViolation, "centre farther than delta' from the corner");

    Track t1 = blend_track(r1, m.s1, 1, prm, lam, true);
    Track t2 = blend_track(r2, m.s2, 2, prm, lam, true);
    const State A = t1.pol.back(), B = t2.pol.back();
    const Point O = center_of(A, sk);
    const double rho = 1.0 / K;
    double phiA = std::atan2(A.x1 - O.x1, A.x3 - O.x3);
    double phiB = std::atan2(B.x1 - O.x1, B.x3 - O.x3);
    double span = sigma > 0 ? phiA - phiB : phiB - phiA;
    span = std::fmod(std::fmod(span, 2 * kPi) + 2 * kPi, 2 * kPi);
    const double L = rho * span;
    const int n_arc = std::max(8, static_cast<int>(std::ceil(span / 0.005)));
    const double shift = m.s1 + lam + L - (m.s2 - lam);

    // theta on the r2 side is continued from the arc, absorbing any 2 pi offset.
    const double theta_end = A.theta - sigma * span;
    const double turn = 2 * kPi * std::round((theta_end - B.theta) / (2 * kPi));

    CornerJoin J;
    J.s1 = m.s1;
    J.s2 = m.s2;
    J.center = O;
    J.arc_span = span;
    J.arc_length = L;
    J.shift = shift;
    auto& out = J.curve.samples;
    const auto& v1 = r1.curve().samples;
    const auto& v2 = r2.curve().samples;
    std::size_t n1 = 0;
    while (n1 < v1.size() && v1[n1].s < m.s1) ++n1;
    out.assign(v1.begin(), v1.begin() + static_cast<long>(n1));
    J.window_begin = out.size();
    for (std::size_t i = 0; i < t1.s.size(); ++i) out.push_back({t1.s[i], t1.pol[i].pos(), t1.pol[i].theta, t1.kp[i]});
    for (int j = 1; j < n_arc; ++j) {
        double f = static_cast<double>(j) / n_arc;
        double psi = phiA - sigma * span * f;
        out.push_back({m.s1 + lam + L * f, {O.x3 + rho * std::cos(psi), O.x1 + rho * std::sin(psi)},
                       A.theta - sigma * span * f, sk});
    }
    for (std::size_t i = t2.s.size(); i-- > 0;)
        out.push_back({t2.s[i] + shift, t2.pol[i].pos(), t2.pol[i].theta + turn, t2.kp[i]});
    J.window_end = out.size();
    std::size_t k2 = 0;
    while (k2 < v2.size() && v2[k2].s <= m.s2) ++k2;
    const std::size_t r2_first = k2;
    for (; k2 < v2.size(); ++k2) out.push_back({v2[k2].s + shift, v2[k2].pos, v2[k2].theta + turn, v2[k2].kappa});

    const double eps = std::max(std::fabs(m.s1), std::fabs(m.s2)) + lam + L;
    prm.epsilon = eps;
    J.params = prm;

    // ---- verification ----
    VerificationReport rep;
    rep.lemma = "glue";

    VerificationReport ident;
    ident.lemma = "identity_outside";
    ident.tolerance = 0.0;
    {
        PlanarCurve ref1 = reconstruct(r1.profile(), r1.step());
        PlanarCurve ref2 = reconstruct(r2.profile(), r2.step());
        auto diff = [](const Sample& a, const Sample& b, double ds, double dth) {
            return std::max({std::fabs(a.pos.x3 - b.pos.x3), std::fabs(a.pos.x1 - b.pos.x1),
                             std::fabs(a.theta - (b.theta + dth)), std::fabs(a.kappa - b.kappa),
                             std::fabs(a.s - (b.s + ds))});
        };
        for (std::size_t i = 0; i < J.window_begin; ++i)
            if (out[i].s <= -eps) ident.check(-diff(out[i], ref1.samples.at(i), 0.0, 0.0), {{"index", i}});
        for (std::size_t i = J.window_end, k = r2_first; i < out.size(); ++i, ++k)
            if (ref2.samples.at(k).s >= eps) ident.check(-diff(out[i], ref2.samples.at(k), shift, turn), {{"index", i}});
    }

    VerificationReport local;
    local.lemma = "locality";
    local.tolerance = 0.0;
    std::size_t w0 = out.size(), w1 = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].s >= -eps && out[i].s <= eps + shift) {
            w0 = std::min(w0, i);
            w1 = std::max(w1, i + 1);
            local.check(prm.delta - dist(out[i].pos, p), {{"index", i}, {"s", out[i].s}}, true);
        }
    }

    VerificationReport embed;
    embed.lemma = "embedded";
    {
        PlanarCurve win;
        std::size_t a = w0 > 0 ? w0 - 1 : 0, b = std::min(out.size(), w1 + 1);
        win.samples.assign(out.begin() + static_cast<long>(a), out.begin() + static_cast<long>(b));
        Intersection x = self_intersects(win);
        embed.check(x.found ? -1.0 : 0.0,
                    x.found ? nlohmann::json{{"segments", {a + x.first, a + x.second}}} : nlohmann::json{});
    }

    VerificationReport hcmp;
    hcmp.lemma = "mean_curvature";
    hcmp.tolerance = 1e-9;
    VerificationReport l43;
    l43.lemma = "comparison_condition";
    l43.tolerance = 1e-12;
    VerificationReport ang;
    ang.lemma = "angles";
    ang.tolerance = 1e-12;
    double hsup = -std::numeric_limits<double>::infinity(), hinf = std::numeric_limits<double>::infinity();
    for (const Track* tr : {&t1, &t2}) {
        const char* name = tr == &t1 ? "P1" : "P2";
        for (std::size_t i = 0; i < tr->s.size(); ++i) {
            Sample sp{tr->s[i], tr->pol[i].pos(), tr->pol[i].theta, tr->kp[i]};
            Sample sb{tr->s[i], tr->base[i].pos(), tr->base[i].theta, tr->kb[i]};
            double Hp = mean_curvature(sp), Hb = mean_curvature(sb);
            hsup = std::max(hsup, Hb);
            hinf = std::min(hinf, Hb);
            hcmp.check(sigma * (Hp - Hb) / std::max(1.0, std::fabs(Hb)), loc(name, tr->s[i]));
            double dmin = std::min(sp.pos.x1, sb.pos.x1);
            double rhs = std::fabs(sp.pos.x1 - sb.pos.x1) / (dmin * dmin) + std::fabs(sp.theta - sb.theta) / dmin;
            l43.check(sigma * (sp.kappa - sb.kappa) - rhs, loc(name, tr->s[i]));
            double drift = std::fabs(tr->pol[i].theta - tr->pol[0].theta);
            ang.check(2 * K * std::fabs(tr->s[i] - tr->s[0]) - drift, loc(name, tr->s[i]));
        }
    }
    for (const auto* v : {&v1, &v2})
        for (const auto& smp : *v)
            if (std::fabs(smp.s) <= eps) {
                double H = mean_curvature(smp);
                hsup = std::max(hsup, H);
                hinf = std::min(hinf, H);
            }
    double harc = 0.5 * (sk + 0.0);
    for (std::size_t i = t1.s.size() + n1; i < t1.s.size() + n1 + static_cast<std::size_t>(n_arc - 1); ++i) {
        harc = mean_curvature(out[i]);
        hcmp.check(sigma > 0 ? harc - hsup : hinf - harc, loc("arc", out[i].s));
    }
    hcmp.data["H_sup_inputs"] = hsup;
    hcmp.data["H_inf_inputs"] = hinf;

    ang.check(2 * prm.beta - std::fabs(wrap(A.theta - prm.theta1)), {{"rule", "|phi1(s1+lambda) - arg T1| <= 2 beta"}});
    ang.check(2 * prm.beta - std::fabs(wrap(B.theta - prm.theta2)), {{"rule", "|phi2(s2-lambda) - arg T2| <= 2 beta"}});
    double chord = std::atan2(B.x1 - A.x1, B.x3 - A.x3);
    ang.check(2 * prm.beta - std::fabs(wrap(chord - prm.theta)), {{"rule", "|arg(B - A) - theta| <= 2 beta"}});
    ang.check(2 * kPi / K - L, {{"rule", "L <= 2 pi / K"}});
    ang.check(kPi - span, {{"rule", "arc span < pi"}}, true);
    ang.check(std::min(-m.s1, m.s2), {{"rule", "s1 <= 0 <= s2"}});
    ang.check(prm.delta_prime - dist(O, p), {{"rule", "|O - p| <= delta'"}});
    ang.check(kMatchTol - m.residual, {{"rule", "centre match residual"}});

    VerificationReport cont;
    cont.lemma = "continuity";
    cont.tolerance = 0.0;
    {
        State b1 = r1.state_at(m.s1), b2 = r2.state_at(m.s2);
        Point arc_end = O + rho * Point{std::cos(phiA - sigma * span), std::sin(phiA - sigma * span)};
        double gaps[] = {dist(b1.pos(), t1.pol.front().pos()), std::fabs(b1.theta - t1.pol.front().theta),
                         dist(arc_end, B.pos()), std::fabs(theta_end - (B.theta + turn)),
                         std::fabs(sk - t2.kp.back()) / K, dist(b2.pos(), t2.pol.front().pos()),
                         std::fabs(b2.theta - t2.pol.front().theta)};
        const char* what[] = {"s1 position", "s1 angle",     "arc end position", "arc end angle",
                              "arc end curvature", "s2 position", "s2 angle"};
        double tol[] = {1e-12, 1e-12, 1e-10, 1e-10, 1e-12, 1e-12, 1e-12};
        for (int i = 0; i < 7; ++i) cont.check(tol[i] - gaps[i], {{"junction", what[i]}, {"gap", gaps[i]}});
    }

    rep.data["s1"] = m.s1;
    rep.data["s2"] = m.s2;
    rep.data["center"] = {O.x3, O.x1};
    rep.data["arc_span"] = span;
    rep.data["arc_length"] = L;
    rep.data["epsilon"] = eps;
    rep.add_section(std::move(constraints));
    rep.add_section(std::move(ident));
    rep.add_section(std::move(local));
    rep.add_section(std::move(embed));
    rep.add_section(std::move(hcmp));
    rep.add_section(std::move(l43));
    rep.add_section(std::move(ang));
    rep.add_section(std::move(cont));
    J.checks = rep;
    if (!rep.pass) {
        std::string msg = "round corner checks failed:";
        for (const auto& s : rep.sections)
            if (!s.pass) msg += " " + s.lemma + " at " + s.witness.dump() + " (margin " + num(s.min_margin) + ")";
        fail(ErrorCode::VerificationFailure, msg);
    }
    return J;
}

CornerJoin auto_glue(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, double delta, int orientation) {
    RoundCornerParams g = derive_geometry(r1, r2, p, delta, orientation);
    double tan_ts = std::max(1.0, std::tan(g.theta_star));
    double kab = orientation > 0 ? 2 * g.kappa_max - g.kappa_min : g.kappa_max - 2 * g.kappa_min;
    double K0 = 1.25 * std::max({2 * g.kappa_sup + 1 / g.d0, kab, 4 / g.delta_prime, 8 * tan_ts / g.eps1});
    double lambda0 = 0.5 * std::min({g.d0 / 4, std::min(g.alpha, g.beta) / (2 * K0), g.eps1 / 8});
    std::string last;
    for (int k = 0; k < 20; ++k) {
        RoundCornerParams prm = g;
        prm.K = std::ldexp(K0, k);
        prm.lambda = std::ldexp(lambda0, -k);
        prm.eps2 = std::min(g.eps1 - prm.lambda, 4 * (prm.lambda + (1 + tan_ts) / prm.K));
        prm.search_iterations = k;
        try {
            return glue(r1, r2, p, prm);
        } catch (const Error& e) {
            switch (e.code()) {
                case ErrorCode::ConstraintViolation:
                case ErrorCode::NoMatch:
                case ErrorCode::VerificationFailure:
                case ErrorCode::DomainExit:
                    last = e.what();
                    continue;
                default:
                    throw;
            }
        }
    }
    fail(ErrorCode::SearchExhausted, "no admissible (K, lambda) in 20 doublings; last: " + last);
}

RoundCornerParams auto_params(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, double delta,
                              int orientation) {
    return auto_glue(r1, r2, p, delta, orientation).params;
}

nlohmann::json to_json(const RoundCornerParams& prm) {
    return {{"lambda", prm.lambda},       {"K", prm.K},
            {"epsilon", prm.epsilon},     {"delta", prm.delta},
            {"orientation", prm.orientation}, {"theta", prm.theta},
            {"theta_star", prm.theta_star}, {"theta1", prm.theta1},
            {"theta2", prm.theta2},       {"alpha", prm.alpha},
            {"beta", prm.beta},           {"d0", prm.d0},
            {"delta_prime", prm.delta_prime}, {"eps1", prm.eps1},
            {"eps2", prm.eps2},           {"kappa_sup", prm.kappa_sup},
            {"a_b", prm.a_b},             {"b_b", prm.b_b},
            {"blend_steps", prm.blend_steps}, {"search_iterations", prm.search_iterations}};
}

}  // namespace cmczone
