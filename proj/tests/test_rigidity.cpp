#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cmczone/error.hpp"
#include "cmczone/report.hpp"
#include "cmczone/rigidity.hpp"

using namespace cmczone;
using namespace cmczone::rigidity;

namespace {
const double kS32 = std::sqrt(3.0) / 2;
}

TEST(A0, ValueAndResidual) {
    double a = compute_a0(1e-10);
    EXPECT_NEAR(a, 0.5524, 5e-5);
    EXPECT_GT(a, 0.5);
    EXPECT_LT(a, 1.0);
    EXPECT_LT(std::fabs(g(compute_a0(1e-12))), 1e-10);
    // 40-digit root of the closed form.
    EXPECT_NEAR(a0(), 0.55243412453088321725, 1e-12);
}

TEST(G, Values) {
    EXPECT_NEAR(g(0.5), -0.16225735854556517961, 1e-14);
    EXPECT_NEAR(g(kS32), 1.45069385566594515430, 1e-13);
    EXPECT_THROW(g(0.0), Error);
    EXPECT_THROW(g(1.0), Error);
}

TEST(G, StrictlyIncreasing) {
    double prev = g(0.1);
    for (int i = 1; i <= 1000; ++i) {
        double v = g(0.1 + 0.89 * i / 1000);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(H, AtA0) {
    EXPECT_LT(h(a0()), 0.0);
    EXPECT_NEAR(h(a0()), -std::pow(1 - a0() * a0(), -1.5), 1e-10);
    EXPECT_NEAR(h(a0()), -1.72661209765972488999, 1e-10);
    EXPECT_NEAR(h(0.5), -1.37734335929343685908, 1e-13);
}

TEST(F, VanishesAtOne) {
    for (double a : {0.3, 0.5, 0.7, 0.9}) {
        EXPECT_NEAR(f_elliptic(a, 1.0), 0.0, 1e-14);
        EXPECT_NEAR(f_quadrature(a, 1.0), 0.0, 1e-12);
    }
}

TEST(F, SignPatternAboveA0) {
    EXPECT_LT(f(0.8, 0.995), 0.0);
    EXPECT_GT(f(0.8, 1.005), 0.0);
}

TEST(F, PathsAgreeAndOracle) {
    EXPECT_NEAR(f_elliptic(0.5, 0.99), f_quadrature(0.5, 0.99), 1e-7);
    EXPECT_NEAR(f_quadrature(0.5, 0.99), 0.00155395186409009658, 1e-11);
    for (int i = 0; i < 20; ++i) {
        double a = 0.05 + 0.85 * i / 19;
        double w = std::min(0.05, a / 2);
        for (int j = 0; j < 20; ++j) {
            double t = 1 - w + 2 * w * j / 19;
            EXPECT_NEAR(f_elliptic(a, t), f_quadrature(a, t), 1e-7) << a << " " << t;
        }
    }
}

TEST(F, FiniteDifferencesMatchGAndH) {
    for (double a : {0.3, 0.5, a0(), 0.7, kS32}) {
        auto fa = [a](double t) { return f_quadrature(a, t); };
        Derivatives d = fd_derivatives(fa, 1.0, 1e-3);
        EXPECT_NEAR(d.first, g(a), 1e-5) << a;
        EXPECT_NEAR(d.second, h(a), 1e-4) << a;
    }
}

TEST(Classify, Examples) {
    RigidityClass c = classify(0.9);
    EXPECT_TRUE(c.strong_h_plus);
    EXPECT_FALSE(c.strong_h_minus);
    EXPECT_TRUE(c.local_h_plus);
    EXPECT_TRUE(c.local_h_minus);

    c = classify(a0());
    EXPECT_FALSE(c.strong_h_plus);
    EXPECT_FALSE(c.strong_h_minus);
    EXPECT_TRUE(c.local_h_plus);
    EXPECT_FALSE(c.local_h_minus);

    c = classify(0.5);
    EXPECT_FALSE(c.strong_h_plus || c.strong_h_minus || c.local_h_plus || c.local_h_minus);

    EXPECT_TRUE(classify(kS32).strong_h_plus);
    EXPECT_THROW(classify(1.0), Error);
}

TEST(Classify, MonotoneAndStrongImpliesLocal) {
    int flips[4] = {0, 0, 0, 0};
    RigidityClass prev = classify(0.001);
    for (int i = 1; i < 2000; ++i) {
        RigidityClass c = classify(0.001 + 0.998 * i / 1999);
        bool now[4] = {c.strong_h_plus, c.strong_h_minus, c.local_h_plus, c.local_h_minus};
        bool was[4] = {prev.strong_h_plus, prev.strong_h_minus, prev.local_h_plus, prev.local_h_minus};
        for (int k = 0; k < 4; ++k) {
            EXPECT_FALSE(was[k] && !now[k]);
            flips[k] += now[k] != was[k];
        }
        EXPECT_FALSE(c.strong_h_minus);
        if (c.strong_h_plus) {
            EXPECT_TRUE(c.local_h_plus);
        }
        prev = c;
    }
    for (int k : flips) EXPECT_LE(k, 1);
}

TEST(Verify, H1Patterns) {
    VerificationReport r = verify_lemma_h1(0.8, 0.01, 50);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.data["pattern"], 1);
    r = verify_lemma_h1(a0(), 0.005, 50);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.data["pattern"], 3);
    r = verify_lemma_h1(0.3, 0.01, 50);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.data["pattern"], 2);
    EXPECT_EQ(r.grid.size(), 100u);
}

TEST(Verify, Tundu) {
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.05 * i);
    VerificationReport r = verify_lemma_tundu(grid);
    EXPECT_TRUE(r.pass);
    EXPECT_GT(r.min_margin, 0.0);
    EXPECT_TRUE(verify_lemma_tundu({0.49}).pass);
    VerificationReport small = verify_lemma_tundu({0.01});
    EXPECT_TRUE(small.pass);
    // u_{0.01}(1/2) from mpmath inversion of the quadrature.
    EXPECT_NEAR(small.data["values"][0]["u_half"].get<double>(), 0.82721716982483922825, 1e-8);
}

TEST(Verify, Htwith1) {
    VerificationReport r = verify_lemma_htwith1({0.4, 0.8, a0()}, {0.995, 1.005});
    EXPECT_TRUE(r.pass);
}

TEST(Verify, Slices) {
    VerificationReport r = verify_slice_curvatures({0.6, 0.9, 0.999});
    EXPECT_TRUE(r.pass);
}

TEST(Verify, AppendixAndForms) {
    EXPECT_TRUE(verify_appendix_derivatives({0.3, 0.5, a0(), 0.7, kS32}).pass);
    EXPECT_TRUE(verify_elliptic_forms(20).pass);
}

TEST(Verify, ReportJsonSchema) {
    VerificationReport r = verify_lemma_tundu({0.1, 0.2});
    nlohmann::json j = to_json(r);
    for (const char* key : {"lemma", "grid", "tolerance", "pass", "max_violation", "witness"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_FALSE(j.contains("wall_seconds"));
}
