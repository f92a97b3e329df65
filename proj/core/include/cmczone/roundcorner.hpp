#pragma once

#include <cstddef>

#include "cmczone/curve.hpp"
#include "cmczone/report.hpp"

namespace cmczone {

// s(x) / (s(x) + s(lambda - x)) with s(x) = exp(-1/x) for x > 0, else 0.
double mollifier(double lambda, double x);
// The same bump on the unit interval stretched to [0, lambda]: mollifier(1, x / lambda).
// Blends use this form; the unscaled one switches over a width of order
// lambda^2, far below any usable step once lambda is small.
double scaled_mollifier(double lambda, double x);

struct RoundCornerParams {
    double lambda = 0.0;
    double K = 0.0;
    double epsilon = 0.0;  // filled in by glue
    double delta = 0.0;
    int orientation = +1;  // +1: result bounds H from below, -1: from above

    // Corner geometry and window sizes (see derive_geometry).
    double theta = 0.0;       // bisector direction arg(T1 + T2)
    double theta_star = 0.0;  // half the turning angle
    double theta1 = 0.0;      // arg T1 at the corner
    double theta2 = 0.0;      // arg T2 at the corner
    double alpha = 0.0;
    double beta = 0.0;
    double d0 = 0.0;           // lower bound for x1 inside the delta-ball
    double delta_prime = 0.0;  // allowed distance of the centre from the corner
    double eps1 = 0.0;         // window where both inputs stay near p and keep their direction
    double eps2 = 0.0;         // scan half-width for the centre match
    double kappa_sup = 0.0;    // sup |kappa_i| on the window
    double kappa_max = 0.0;
    double kappa_min = 0.0;
    double a_b = 0.0;  // bounds of |orientation*K - kappa_i| on the window
    double b_b = 0.0;
    int blend_steps = 200;
    int search_iterations = 0;  // doublings used by auto_params
};

struct HalfPolish {
    PlanarCurve curve;  // blended piece followed (side 1) or preceded (side 2) by its circle tail
    PlanarCurve base;   // base curve on the same parameters
    Point center;
};

struct CenterMatch {
    double s1 = 0.0;
    double s2 = 0.0;
    Point center;
    double residual = 0.0;
};

struct CornerJoin {
    double s1 = 0.0;
    double s2 = 0.0;
    Point center;
    double arc_span = 0.0;
    double arc_length = 0.0;
    double shift = 0.0;  // assembled s = s_r2 + shift on the r2 side
    PlanarCurve curve;
    std::size_t window_begin = 0;  // first sample with s >= s1
    std::size_t window_end = 0;    // one past the last sample with s <= s2 + shift
    RoundCornerParams params;
    VerificationReport checks;
};

// Corner geometry at p = r1(0) = r2(0) for the given delta and orientation.
RoundCornerParams derive_geometry(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, double delta,
                                  int orientation);

HalfPolish half_polish(int side, const CurveEvaluator& base, double s0, const RoundCornerParams& params,
                       double tail = 0.0);

CenterMatch find_center_match(const CurveEvaluator& r1, const CurveEvaluator& r2, const RoundCornerParams& params);

// Joins r1 (used for s <= s1) and r2 (used for s >= s2) through blends and a
// circular arc, then verifies every requirement on the result. Throws
// VerificationFailure if a check fails.
CornerJoin glue(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, const RoundCornerParams& params);

// Searches K = K0 2^k, lambda = lambda0 / 2^k until glue succeeds.
RoundCornerParams auto_params(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, double delta,
                              int orientation);
CornerJoin auto_glue(const CurveEvaluator& r1, const CurveEvaluator& r2, Point p, double delta, int orientation);

nlohmann::json to_json(const RoundCornerParams& params);

}  // namespace cmczone
