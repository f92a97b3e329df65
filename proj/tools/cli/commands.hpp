#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cmczone/report.hpp"
#include "cmczone/rigidity.hpp"

namespace cmczone::cli {

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2 };

struct CliConfig {
    double root_tol = 1e-12;  // a0 bisection
    double hbound_tol = 1e-6;  // perturbation certificates
    int samples = 401;
    std::string out;     // empty or "-" means stdout
    std::string report;  // empty or "-" means stdout
    std::string format;  // csv, json or svg; empty means from the file extension

    void validate() const;  // throws Error(DomainError)
};

// "lo:hi:step" (inclusive) or a comma-separated list. Entries may be the
// names "a0" and "sqrt3/2".
std::vector<double> parse_grid(const std::string& text);
double parse_real(const std::string& text);

nlohmann::json to_json(double a, const rigidity::RigidityClass& c);

struct VerifyOptions {
    std::vector<double> a;     // zone parameters (h1, htwith1, appendix-derivatives)
    std::vector<double> grid;  // t grid (tundu, slices, htwith1) or a grid (appendix-derivatives)
    double eta = 0.005;
    int n = 50;  // points per side for h1, grid size for elliptic-forms
};

inline const std::vector<std::string> kLemmas = {"h1",     "tundu",          "htwith1",
                                                 "slices", "appendix-derivatives", "elliptic-forms",
                                                 "all"};

// Runs one verifier (or all of them) with the documented default grids for
// anything left empty in opts.
VerificationReport verify(const std::string& lemma, const VerifyOptions& opts);

// Entry point shared by the executable and the tests; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmczone::cli
