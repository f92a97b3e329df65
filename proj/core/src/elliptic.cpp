#include "cmczone/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cmczone/error.hpp"
#include "numerics.hpp"

namespace cmczone {

namespace {

void check_args(EllipticArgs a) {
    if (!(a.theta >= 0 && a.theta <= std::numbers::pi / 2 + 1e-15) || !(a.k >= 0) || !std::isfinite(a.k))
        fail(ErrorCode::ModulusDomain, "elliptic arguments out of range: k = " + std::to_string(a.k) +
                                           ", theta = " + std::to_string(a.theta));
    if (a.k * std::sin(a.theta) > 1.0 - kModulusGuard)
        fail(ErrorCode::ModulusDomain, "k sin(theta) = " + std::to_string(a.k * std::sin(a.theta)) +
                                           " is not below 1");
}

double quad(double k, double theta, bool second_kind) {
    double k2 = k * k;
    auto f = [k2, second_kind](double phi) {
        double s = std::sin(phi);
        double d = std::sqrt(1.0 - k2 * s * s);
        return second_kind ? d : 1.0 / d;
    };
    return detail::integrate(f, 0.0, theta, 1e-15);
}

}  // namespace

double ellip_F(EllipticArgs a) {
    check_args(a);
    if (a.k == 0.0) return a.theta;
    if (a.k == 1.0) return std::log(1.0 / std::cos(a.theta) + std::tan(a.theta));
    return quad(a.k, a.theta, false);
}

double ellip_E(EllipticArgs a) {
    check_args(a);
    if (a.k == 0.0) return a.theta;
    if (a.k == 1.0) return std::sin(a.theta);
    return quad(a.k, a.theta, true);
}

double ellip_dFdk(EllipticArgs a) {
    check_args(a);
    if (std::fabs(a.k - 1.0) < kModulusGuard)
        fail(ErrorCode::SingularModulus, "dF/dk is singular at k = 1");
    if (a.k == 0.0) return 0.0;
    double k = a.k, k2 = k * k;
    double s = std::sin(a.theta);
    double delta = std::sqrt(1.0 - k2 * s * s);
    return ellip_E(a) / (k * (1.0 - k2)) - ellip_F(a) / k -
           k * std::sin(2.0 * a.theta) / (2.0 * (1.0 - k2) * delta);
}

double ellip_dEdk(EllipticArgs a) {
    check_args(a);
    if (a.k == 0.0) return 0.0;
    return (ellip_E(a) - ellip_F(a)) / a.k;
}

double modulus_of(double t) {
    if (!(t > 0.5)) fail(ErrorCode::DomainError, "modulus_of needs t > 1/2, got " + std::to_string(t));
    return t / std::sqrt(2.0 * t - 1.0);
}

double amplitude_of(double a, double t) {
    if (!(t > 0.5) || !(a > 0) || !(a <= t) || !(std::fabs(t - 1.0) < a))
        fail(ErrorCode::DomainError, "amplitude_of needs 0 < a <= t, t > 1/2, |t-1| < a; got a = " +
                                         std::to_string(a) + ", t = " + std::to_string(t));
    return std::acos(a / t);
}

double delta_of(EllipticArgs a) {
    double s = std::sin(a.theta);
    double r = 1.0 - a.k * a.k * s * s;
    if (r < 0) fail(ErrorCode::ModulusDomain, "k sin(theta) exceeds 1");
    return std::sqrt(r);
}

}  // namespace cmczone
