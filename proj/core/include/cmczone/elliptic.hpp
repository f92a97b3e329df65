#pragma once

namespace cmczone {

// Incomplete elliptic integrals in the (modulus, amplitude) form. The modulus
// may exceed 1 as long as k sin(theta) stays below 1.
struct EllipticArgs {
    double k = 0.0;
    double theta = 0.0;
};

inline constexpr double kModulusGuard = 1e-9;

double ellip_F(EllipticArgs args);
double ellip_E(EllipticArgs args);
double ellip_dFdk(EllipticArgs args);
double ellip_dEdk(EllipticArgs args);  // (E - F) / k, with the k -> 0 limit 0

// k(t) = t / sqrt(2t - 1) and theta(a, t) = arccos(a / t).
double modulus_of(double t);
double amplitude_of(double a, double t);
double delta_of(EllipticArgs args);  // sqrt(1 - k^2 sin^2 theta)

}  // namespace cmczone
