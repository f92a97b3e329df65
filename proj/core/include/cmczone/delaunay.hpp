#pragma once

#include "cmczone/curve.hpp"

namespace cmczone {

// Rotational constant-mean-curvature profiles x1 = c(H, t, x3) through the
// symmetric point (0, t), with the inward normal. Along such a profile
//   x^2 - N^2 = H^2 (q^2 - x^2)(x^2 - p^2),   N = H x^2 + t - H t^2,
// where {p, q} = {|1/H - t|, t} sorted: p and q are the two heights at which
// the profile turns back toward the axis (neck) or away from it (bulge).
struct DelaunayParams {
    double H = 1.0;
    double t = 1.0;

    double turning_partner() const;  // |1/H - t|
    double p() const;                // lower turning height
    double q() const;                // upper turning height
    // Heights between which x3 -> c(x3) is a monotone graph starting at t.
    double window_lo() const;
    double window_hi() const;
    bool neck_at_t() const { return t <= turning_partner(); }
    void validate() const;
};

struct ZoneSpec {
    double a = 0.5;

    static ZoneSpec make(double a);
    double w3() const;      // sqrt(1 - a^2), the x3 of the zone boundary
    double theta1() const;  // arccos a
};

double D(double H, double t, double x);

// x3 reached by the profile when its height is x1 (graph window only).
double profile_x3(double H, double t, double x1);
// Largest |x3| covered by the graph window.
double profile_x3_max(double H, double t);
// Height of the profile at x3 (even in x3).
double profile_c(double H, double t, double x3);
// First and second x3-derivatives of profile_c (odd and even respectively).
double profile_dc(double H, double t, double x3);
double profile_ddc(double H, double t, double x3);

// Signed integral of 1/D from a to t; the signed slope keeps the value
// meaningful when the profile passes a vertical tangent between a and t.
double x_star(double a, double H, double t);

// The H for which the profile with neck height t reaches height a at
// x3 = sqrt(1 - a^2).
double H_of_t(ZoneSpec zone, double t);

double tilde_c(ZoneSpec zone, double t, double x3);
double hat_c(ZoneSpec zone, double t, double x3);

// The H = 1 profile with neck t < 1/2 (unduloid meridian).
double undulary(double t, double x3);
double undulary_half_period(double t);
Point undulary_circle_hit(double t);
double undulary_height_hit(double t, double a);

// kappa = 2H - cos(theta)/x1: the curvature law of every rotational CMC-H profile.
CurvatureLaw cmc_law(double H);
// The same profile as an ODE solution seeded at the symmetric point (0, t), theta = 0, s = 0.
CurvatureProfile cmc_profile(double H, double t, double s_lo, double s_hi);

// Graph samples of profile_c on [-x3_max, x3_max] with arc length by chords.
PlanarCurve sample_profile(double H, double t, double x3_max, int n);

}  // namespace cmczone
