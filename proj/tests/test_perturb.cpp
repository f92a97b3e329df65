#include <cmath>
#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "cmczone/curve.hpp"
#include "cmczone/error.hpp"
#include "cmczone/perturb.hpp"
#include "cmczone/rigidity.hpp"

using namespace cmczone;

namespace {

const VerificationReport* section(const VerificationReport& r, const std::string& name) {
    for (const auto& s : r.sections)
        if (s.lemma == name) return &s;
    return nullptr;
}

ErrorCode code_of(Mode mode, double a, std::optional<double> param = {}) {
    try {
        build(mode, a, param);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "build succeeded";
    return ErrorCode::DomainError;
}

}  // namespace

TEST(Mode, Names) {
    EXPECT_EQ(parse_mode("global-hminus"), Mode::GlobalHMinus);
    EXPECT_EQ(parse_mode("local_h_plus"), Mode::LocalHPlus);
    EXPECT_EQ(parse_mode("local-hplus"), Mode::LocalHPlus);
    EXPECT_THROW(parse_mode("bogus"), Error);
    EXPECT_EQ(orientation_of(Mode::GlobalHMinus), -1);
    EXPECT_EQ(orientation_of(Mode::GlobalHPlus), 1);
}

TEST(GlobalHMinus, BuildsAtHalf) {
    PerturbationResult r = build_global_h_minus(0.5);
    EXPECT_TRUE(r.certificate.pass);
    double xmax = r.construction_log["max_x1"];
    // The reflection of the unit circle in x1 = a' peaks at 2a' + 1.
    EXPECT_GT(xmax, 1.0);
    EXPECT_LE(xmax, 2 * 0.75 + 1);
    for (const auto& s : r.curve.samples) {
        if (s.pos.x1 <= 0.5) {
            EXPECT_NEAR(norm(s.pos), 1.0, 1e-10);
        }
        EXPECT_LE(mean_curvature(s), 1 + kDefaultHTol);
    }
    EXPECT_FALSE(self_intersects(r.curve).found);
}

TEST(GlobalHPlus, BuildsWithUndulary) {
    PerturbationResult r = build_global_h_plus(0.5, 0.25);
    EXPECT_TRUE(r.certificate.pass);
    EXPECT_LT(r.construction_log["min_radius"].get<double>(), 1.0);
    for (const auto& s : r.curve.samples) EXPECT_GE(mean_curvature(s), 1 - kDefaultHTol);
}

TEST(GlobalHPlus, AutoNeckJustBelowThreshold) {
    PerturbationResult r = build_global_h_plus(0.86);
    EXPECT_TRUE(r.certificate.pass);
    EXPECT_LT(r.construction_log["t"].get<double>(), 0.25);
}

TEST(GlobalHPlus, ImpossibleAboveThreshold) { EXPECT_EQ(code_of(Mode::GlobalHPlus, 0.9), ErrorCode::WindowFailure); }

TEST(LocalHPlus, BuildsBelowA0) {
    PerturbationResult r = build_local_h_plus(0.4, 0.995);
    EXPECT_TRUE(r.certificate.pass);
    EXPECT_LT(sup_distance_to_sphere(r.curve), 0.01);
    EXPECT_GT(rigidity::f(0.4, 0.995), 0.0);
}

TEST(LocalHPlus, NoCrossingAboveA0) {
    EXPECT_EQ(code_of(Mode::LocalHPlus, 0.7, 0.995), ErrorCode::CrossingNotFound);
}

TEST(LocalHMinus, BuildsAtA0AndBelow) {
    EXPECT_TRUE(build_local_h_minus(rigidity::a0(), 1.005).certificate.pass);
    EXPECT_TRUE(build_local_h_minus(0.4, 1.005).certificate.pass);
    EXPECT_LT(rigidity::f(rigidity::a0(), 1.005), 0.0);
    EXPECT_LT(rigidity::f(rigidity::a0(), 0.995), 0.0);
}

TEST(LocalHMinus, NoCrossingAboveA0) {
    EXPECT_EQ(code_of(Mode::LocalHMinus, 0.7, 1.005), ErrorCode::CrossingNotFound);
}

TEST(Certify, SectionsAndSymmetry) {
    PerturbationResult r = build_global_h_minus(0.5);
    for (const char* name : {"h_bound", "embedded", "identity_outside_zone", "symmetry", "arclength"}) {
        const VerificationReport* s = section(r.certificate, name);
        ASSERT_NE(s, nullptr) << name;
        EXPECT_TRUE(s->pass) << name;
    }
    EXPECT_NEAR(r.curve.samples[r.seam].pos.x3, 0.0, 1e-9);
    PlanarCurve m = mirror(r.curve, r.curve.samples[r.seam].s);
    EXPECT_LT(hausdorff_to(r.curve, m), 1e-9);
}

TEST(Certify, CorruptedSampleFails) {
    PerturbationResult r = build_global_h_minus(0.5);
    // Displace one sample in the untouched circle part and one in the zone.
    for (std::size_t idx : {r.curve.size() / 10, r.seam - 3}) {
        PerturbationResult bad = r;
        bad.curve.samples[idx].pos.x1 += 1e-2;
        VerificationReport rep = certify(bad);
        EXPECT_FALSE(rep.pass);
        bool witnessed = false;
        for (const auto& s : rep.sections)
            if (!s.pass && !s.witness.is_null()) witnessed = true;
        EXPECT_TRUE(witnessed);
    }
}

TEST(Certify, ToleranceSweep) {
    PerturbationResult r = build_global_h_minus(0.5);
    for (double tol : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) EXPECT_TRUE(certify(r, tol).pass) << tol;
}

TEST(Locality, SupDistanceShrinksTowardOne) {
    for (Mode mode : {Mode::LocalHPlus, Mode::LocalHMinus}) {
        int sign = orientation_of(mode);
        double prev = 1e9;
        // Below d = 0.002 the corner angle falls under the glue continuity resolution.
        for (double d : {0.02, 0.01, 0.005, 0.002}) {
            PerturbationResult r = build(mode, 0.4, 1 - sign * d);
            double sd = sup_distance_to_sphere(r.curve);
            EXPECT_LT(sd, prev) << to_string(mode) << " " << d;
            prev = sd;
        }
    }
}

TEST(Consistency, BuildersComplementClassify) {
    const std::vector<double> grid = {0.3, 0.4, 0.5, rigidity::a0(), 0.6, 0.7, 0.8, 0.9};
    for (double a : grid) {
        rigidity::RigidityClass c = rigidity::classify(a);
        auto ok = [a](Mode m) {
            try {
                return build(m, a).certificate.pass;
            } catch (const Error&) {
                return false;
            }
        };
        EXPECT_TRUE(ok(Mode::GlobalHMinus)) << a;
        EXPECT_EQ(ok(Mode::GlobalHPlus), !c.strong_h_plus) << a;
        EXPECT_EQ(ok(Mode::LocalHPlus), !c.local_h_plus) << a;
        EXPECT_EQ(ok(Mode::LocalHMinus), !c.local_h_minus) << a;
    }
}

TEST(Builders, RejectBadZone) {
    EXPECT_THROW(build_global_h_minus(0.0), Error);
    EXPECT_THROW(build_local_h_plus(0.4, 1.01), Error);
}
