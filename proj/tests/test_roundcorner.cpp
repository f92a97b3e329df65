#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "cmczone/curve.hpp"
#include "cmczone/error.hpp"
#include "cmczone/perturb.hpp"
#include "cmczone/roundcorner.hpp"
#include "corner_inputs.hpp"

using namespace cmczone;

namespace {

constexpr double kPi = std::numbers::pi;

CurveEvaluator line(Point through, double theta, double lo = -1.0, double hi = 1.0) {
    return CurveEvaluator(
        CurvatureProfile::of_arclength([](double) { return 0.0; }, lo, hi, 0.0, through, theta), 1e-3);
}

// Algebraic least-squares circle fit: x^2 + y^2 + D x + E y + F = 0.
struct Fit {
    double cx, cy, r;
};

Fit fit_circle(const std::vector<Point>& pts) {
    double m[3][4] = {};
    for (Point q : pts) {
        double row[3] = {q.x3, q.x1, 1.0};
        double rhs = -(q.x3 * q.x3 + q.x1 * q.x1);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
            m[i][3] += row[i] * rhs;
        }
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        for (int k = 0; k < 4; ++k) std::swap(m[c][k], m[piv][k]);
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            double f = m[r][c] / m[c][c];
            for (int k = 0; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    double D = m[0][3] / m[0][0], E = m[1][3] / m[1][1], F = m[2][3] / m[2][2];
    double cx = -D / 2, cy = -E / 2;
    return {cx, cy, std::sqrt(cx * cx + cy * cy - F)};
}

RoundCornerParams straight_params(double K, double lambda) {
    RoundCornerParams prm;
    prm.K = K;
    prm.lambda = lambda;
    prm.orientation = +1;
    return prm;
}

}  // namespace

TEST(Mollifier, Endpoints) {
    EXPECT_EQ(mollifier(0.1, -1), 0.0);
    EXPECT_EQ(mollifier(0.1, 0.0), 0.0);
    EXPECT_EQ(mollifier(0.1, 0.2), 1.0);
    EXPECT_EQ(mollifier(0.1, 0.1), 1.0);
}

TEST(Mollifier, HalfAtMidpoint) {
    EXPECT_NEAR(mollifier(0.07, 0.035), 0.5, 1e-15);
    EXPECT_NEAR(scaled_mollifier(0.07, 0.035), 0.5, 1e-15);
}

TEST(Mollifier, Monotone) {
    for (double lam : {0.07, 0.5, 1.0}) {
        double prev = -1;
        for (int i = 0; i <= 1000; ++i) {
            double x = -lam + 3 * lam * i / 1000;
            double v = mollifier(lam, x);
            EXPECT_GE(v, prev);
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
            prev = v;
        }
    }
}

TEST(Mollifier, ScaledFormIsStretchedUnitBump) {
    for (double x : {0.001, 0.004, 0.007})
        EXPECT_DOUBLE_EQ(scaled_mollifier(0.01, x), mollifier(1.0, x / 0.01));
}

TEST(HalfPolish, TailIsCircleOfRadiusOneOverK) {
    const double K = 20, lambda = 0.01;
    CurveEvaluator base = line({0, 1}, 0.0);
    HalfPolish hp = half_polish(1, base, 0.0, straight_params(K, lambda), 0.1);
    std::vector<Point> tail;
    for (const auto& s : hp.curve.samples)
        if (s.s >= lambda) tail.push_back(s.pos);
    ASSERT_GT(tail.size(), 100u);
    Fit f = fit_circle(tail);
    EXPECT_NEAR(f.r, 1 / K, 1e-8);
    EXPECT_NEAR(f.cx, hp.center.x3, 1e-8);
    EXPECT_NEAR(f.cy, hp.center.x1, 1e-8);
    for (Point q : tail) EXPECT_NEAR(dist(q, hp.center), 1 / K, 1e-10);
}

TEST(HalfPolish, AngleDriftBoundedByTwoKLambda) {
    const double K = 20, lambda = 0.01;
    CurveEvaluator base = line({0, 1}, 0.2);
    for (int side : {1, 2}) {
        HalfPolish hp = half_polish(side, base, 0.0, straight_params(K, lambda));
        const auto& v = hp.curve.samples;
        const Sample& anchor = side == 1 ? v.front() : v.back();
        for (const auto& s : v) EXPECT_LE(std::fabs(s.theta - anchor.theta), 2 * K * std::fabs(s.s - anchor.s) + 1e-15);
    }
}

TEST(HalfPolish, AnchorSampleIsUnchanged) {
    CurveEvaluator base = line({0, 1}, 0.3);
    HalfPolish hp = half_polish(1, base, 0.1, straight_params(20, 0.01));
    const Sample& a = hp.curve.samples.front();
    const Sample& b = hp.base.samples.front();
    EXPECT_EQ(a.pos.x3, b.pos.x3);
    EXPECT_EQ(a.pos.x1, b.pos.x1);
    EXPECT_EQ(a.theta, b.theta);
    EXPECT_EQ(a.kappa, b.kappa);
}

TEST(HalfPolish, RejectsSmallK) {
    RoundCornerParams prm = straight_params(1.0, 0.01);
    prm.kappa_sup = 1.0;
    EXPECT_THROW(half_polish(1, line({0, 1}, 0.0), 0.0, prm), Error);
}

TEST(Geometry, PerpendicularCorner) {
    // Incoming at +45 degrees, outgoing at -45: half turning angle pi/4.
    Point p{0, 1};
    CurveEvaluator r1 = line(p, kPi / 4), r2 = line(p, -kPi / 4);
    RoundCornerParams g = derive_geometry(r1, r2, p, 0.2, +1);
    EXPECT_NEAR(g.theta_star, kPi / 4, 1e-15);
    EXPECT_NEAR(g.theta, 0.0, 1e-15);
    EXPECT_GT(g.beta, 0.0);
    EXPECT_LT(g.beta, kPi / 16);
    EXPECT_NEAR(g.beta, kPi / 32, 1e-15);
}

TEST(Geometry, TangentialInputsRejected) {
    Point p{0, 1};
    CurveEvaluator r1 = line(p, 0.1), r2 = line(p, 0.1);
    try {
        derive_geometry(r1, r2, p, 0.2, +1);
        FAIL() << "tangential inputs accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConstraintViolation);
    }
    EXPECT_THROW(auto_glue(r1, r2, p, 0.2, +1), Error);
}

TEST(Geometry, WrongOrientationRejected) {
    Point p{0, 1};
    EXPECT_THROW(derive_geometry(line(p, 0.3), line(p, -0.3), p, 0.2, -1), Error);
}

TEST(CenterMatch, SymmetricPair) {
    Point p{0, 1};
    CurveEvaluator r1 = line(p, 0.3), r2 = line(p, -0.3);
    RoundCornerParams prm = auto_params(r1, r2, p, 0.2, +1);
    CenterMatch m = find_center_match(r1, r2, prm);
    EXPECT_NEAR(m.s1, -m.s2, 1e-9);
    EXPECT_NEAR(m.center.x3, 0.0, 1e-9);
    EXPECT_LT(m.residual, 1e-10);
}

TEST(CenterMatch, ReflectedCircleAgainstDenseGrid) {
    auto in = fixtures::reflected_circle_corner(0.5);
    RoundCornerParams prm = auto_params(in.r1, in.r2, in.p, in.delta, -1);
    CenterMatch m = find_center_match(in.r1, in.r2, prm);
    EXPECT_LT(m.residual, 1e-9);

    // Global minimum of |O1(s1) - O2(s2)| on a dense grid.
    const int n = 201;
    const double e2 = prm.eps2, lam = prm.lambda;
    std::vector<double> g1(n), g2(n);
    std::vector<Point> c1(n), c2(n);
    for (int i = 0; i < n; ++i) {
        g1[i] = std::max(-e2, in.r1.s_lo()) + (std::min(e2, in.r1.s_hi() - lam) - std::max(-e2, in.r1.s_lo())) * i / (n - 1);
        g2[i] = std::max(-e2, in.r2.s_lo() + lam) + (std::min(e2, in.r2.s_hi()) - std::max(-e2, in.r2.s_lo() + lam)) * i / (n - 1);
        c1[i] = half_polish(1, in.r1, g1[i], prm).center;
        c2[i] = half_polish(2, in.r2, g2[i], prm).center;
    }
    double best = std::numeric_limits<double>::infinity();
    int bi = 0, bj = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (double d = dist(c1[i], c2[j]); d < best) {
                best = d;
                bi = i;
                bj = j;
            }
    EXPECT_NEAR(m.s1, g1[bi], 2 * (g1[1] - g1[0]));
    EXPECT_NEAR(m.s2, g2[bj], 2 * (g2[1] - g2[0]));
}

TEST(Glue, ReflectedCirclePassesAllChecks) {
    auto in = fixtures::reflected_circle_corner(0.5);
    CornerJoin j = auto_glue(in.r1, in.r2, in.p, in.delta, -1);
    EXPECT_TRUE(j.checks.pass);
    for (const auto& s : j.checks.sections) EXPECT_TRUE(s.pass) << s.lemma;
    EXPECT_LE(j.arc_length, 2 * kPi / j.params.K);
    for (std::size_t i = j.window_begin; i < j.window_end; ++i)
        EXPECT_LE(mean_curvature(j.curve.samples[i]), 1 + 1e-6);
    EXPECT_FALSE(self_intersects(j.curve).found);
}

TEST(Glue, ComparisonConditionHoldsOnBlend) {
    auto in = fixtures::reflected_circle_corner(0.5);
    CornerJoin j = auto_glue(in.r1, in.r2, in.p, in.delta, -1);
    bool seen = false;
    for (const auto& s : j.checks.sections)
        if (s.lemma == "comparison_condition") {
            seen = true;
            EXPECT_TRUE(s.pass);
            EXPECT_GE(s.min_margin, -1e-12);
        }
    EXPECT_TRUE(seen);
}

TEST(Glue, MirroredInputsGiveMirroredJoin) {
    auto left = fixtures::reflected_circle_corner(0.5);
    auto right = fixtures::reflected_circle_corner(0.5, true);
    CornerJoin a = auto_glue(left.r1, left.r2, left.p, left.delta, -1);
    CornerJoin b = auto_glue(right.r1, right.r2, right.p, right.delta, -1);
    EXPECT_EQ(a.params.search_iterations, b.params.search_iterations);
    EXPECT_NEAR(a.s1, -b.s2, 1e-9);
    EXPECT_NEAR(a.s2, -b.s1, 1e-9);
    EXPECT_NEAR(a.center.x3, -b.center.x3, 1e-9);
    EXPECT_NEAR(a.center.x1, b.center.x1, 1e-9);
    EXPECT_NEAR(a.arc_span, b.arc_span, 1e-9);
    // Mean curvature on the arc agrees pointwise.
    EXPECT_NEAR(mean_curvature(a.curve.samples[a.window_begin]),
                mean_curvature(b.curve.samples[b.window_end - 1]), 1e-8);
}

TEST(Glue, IdentityOutsideWindowIsBitwise) {
    auto in = fixtures::reflected_circle_corner(0.5);
    CornerJoin j = auto_glue(in.r1, in.r2, in.p, in.delta, -1);
    PlanarCurve ref = reconstruct(in.r1.profile(), in.r1.step());
    for (std::size_t i = 0; i < j.window_begin; ++i) {
        if (j.curve.samples[i].s > -j.params.epsilon) break;
        EXPECT_EQ(j.curve.samples[i].pos.x3, ref.samples[i].pos.x3);
        EXPECT_EQ(j.curve.samples[i].pos.x1, ref.samples[i].pos.x1);
    }
}

TEST(Glue, MissingGeometryRejected) {
    auto in = fixtures::reflected_circle_corner(0.5);
    RoundCornerParams prm;
    prm.K = 100;
    prm.lambda = 1e-3;
    prm.orientation = -1;
    EXPECT_THROW(glue(in.r1, in.r2, in.p, prm), Error);
}

TEST(AutoParams, UndularyCornerConvergesWithinTwentyDoublings) {
    PerturbationResult r = build_global_h_plus(0.5, 0.25);
    int k = r.construction_log["left_corner"]["search_iterations"];
    EXPECT_GE(k, 0);
    EXPECT_LT(k, 20);
    // Regression value of the search.
    EXPECT_EQ(k, r.construction_log["right_corner"]["search_iterations"].get<int>());
}
