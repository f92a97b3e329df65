#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cmczone/curve.hpp"
#include "cmczone/report.hpp"

namespace cmczone {

enum class Mode { GlobalHMinus, GlobalHPlus, LocalHPlus, LocalHMinus };

const char* to_string(Mode mode) noexcept;
// Accepts both "global_h_minus" and the CLI spelling "global-hminus".
Mode parse_mode(const std::string& name);
// +1 when the perturbation must keep H >= 1, -1 when H <= 1.
int orientation_of(Mode mode) noexcept;

inline constexpr double kDefaultHTol = 1e-6;

// A perturbed meridian of the unit sphere, symmetric about the x1-axis and
// running from near (-1, 0) to near (1, 0). The zone is |x3| < sqrt(1 - a^2);
// outside it the curve is the unit circle.
struct PerturbationResult {
    PlanarCurve curve;
    Mode mode = Mode::GlobalHMinus;
    double a = 0.0;
    double delta = 0.0;
    std::size_t seam = 0;  // index of the sample on the x1-axis
    double s_cut = 1e-3;   // arc length of the circle left out next to each pole
    VerificationReport certificate;
    nlohmann::json construction_log = nlohmann::json::object();
};

PerturbationResult build_global_h_minus(double a);
// t: neck of the undulary; chosen automatically when absent.
PerturbationResult build_global_h_plus(double a, std::optional<double> t = {});
// t_prime < 1 (resp. t0_prime > 1) is the height of the replacement profile on the axis.
PerturbationResult build_local_h_plus(double a, std::optional<double> t_prime = {});
PerturbationResult build_local_h_minus(double a, std::optional<double> t0_prime = {});
PerturbationResult build(Mode mode, double a, std::optional<double> param = {});

// Checks the H bound, embeddedness, agreement with the circle outside the
// zone, mirror symmetry and arc-length consistency of a built curve.
VerificationReport certify(const PerturbationResult& result, double tol = kDefaultHTol);

// max | |r(s)| - 1 | over the curve.
double sup_distance_to_sphere(const PlanarCurve& curve);

}  // namespace cmczone
