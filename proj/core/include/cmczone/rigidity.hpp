#pragma once

#include <functional>
#include <vector>

#include "cmczone/report.hpp"

namespace cmczone::rigidity {

struct RigidityConstants {
    double a0 = 0.0;
    double sqrt3_over_2 = 0.0;
};

struct RigidityClass {
    bool strong_h_plus = false;
    bool strong_h_minus = false;
    bool local_h_plus = false;
    bool local_h_minus = false;
};

// f(a, t) = x*(a, 1, t) - sqrt(1 - a^2), two independent evaluations.
double f_elliptic(double a, double t);
double f_quadrature(double a, double t);
inline double f(double a, double t) { return f_elliptic(a, t); }

// df/dt and d^2f/dt^2 at t = 1 in closed form.
double g(double a);
double h(double a);

double compute_a0(double tol);
double a0();  // computed once at 1e-13
RigidityConstants constants();
RigidityClass classify(double a);

// Richardson-extrapolated central differences at x over h, h/2, h/4.
struct Derivatives {
    double first = 0.0;
    double second = 0.0;
};
Derivatives fd_derivatives(const std::function<double(double)>& fn, double x, double h);

VerificationReport verify_lemma_h1(double a, double eta, int n);
VerificationReport verify_lemma_tundu(const std::vector<double>& t_grid);
VerificationReport verify_lemma_htwith1(const std::vector<double>& a_grid, const std::vector<double>& t_grid);
VerificationReport verify_slice_curvatures(const std::vector<double>& t_grid);
VerificationReport verify_appendix_derivatives(const std::vector<double>& a_grid);
VerificationReport verify_elliptic_forms(int n);

}  // namespace cmczone::rigidity
