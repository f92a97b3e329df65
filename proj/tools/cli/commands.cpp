#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cmczone/curve.hpp"
#include "cmczone/delaunay.hpp"
#include "cmczone/error.hpp"
#include "cmczone/perturb.hpp"

namespace cmczone::cli {

namespace {

const double kSqrt3Over2 = std::sqrt(3.0) / 2;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::string format_for(const std::string& format, const std::string& path, const std::string& fallback) {
    if (!format.empty()) return format;
    auto dot = path.rfind('.');
    if (dot != std::string::npos) {
        std::string ext = path.substr(dot + 1);
        if (ext == "svg" || ext == "json" || ext == "csv") return ext;
    }
    return fallback;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::DomainError, "cannot open '" + path + "' for writing");
    f << text;
    if (!f) fail(ErrorCode::DomainError, "failed writing '" + path + "'");
}

int exit_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::DomainError:
        case ErrorCode::OutOfWindow:
        case ErrorCode::ModulusDomain:
        case ErrorCode::SingularModulus:
        case ErrorCode::RadicandNegative:
        case ErrorCode::BeyondBulge:
            return kUsage;
        default:
            return kFail;
    }
}

std::vector<double> or_default(const std::vector<double>& v, std::vector<double> fallback) {
    return v.empty() ? fallback : v;
}

VerificationReport suite(const std::string& name, std::vector<VerificationReport> parts) {
    VerificationReport r;
    r.lemma = name;
    for (auto& p : parts) r.add_section(std::move(p));
    return r;
}

std::string summary(const VerificationReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %s (min margin %.3e, max violation %.3e)\n", r.lemma.c_str(),
                  r.pass ? "PASS" : "FAIL", r.min_margin, r.max_violation);
    return buf;
}

std::string curve_text(const PlanarCurve& c, const std::string& format) {
    if (format == "svg") return to_svg(c);
    if (format == "csv") return to_csv(c);
    fail(ErrorCode::DomainError, "curves are written as csv or svg, not '" + format + "'");
}

}  // namespace

void CliConfig::validate() const {
    if (!(root_tol > 0) || !(hbound_tol > 0)) fail(ErrorCode::DomainError, "tolerances must be positive");
    if (samples < 2) fail(ErrorCode::DomainError, "need at least two samples");
    if (!format.empty() && format != "csv" && format != "json" && format != "svg")
        fail(ErrorCode::DomainError, "format must be csv, json or svg");
}

double parse_real(const std::string& text) {
    std::string s = trim(text);
    if (s == "a0") return rigidity::a0();
    if (s == "sqrt3/2") return kSqrt3Over2;
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) fail(ErrorCode::DomainError, "not a number: '" + text + "'");
    return v;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) fail(ErrorCode::DomainError, "grid must be lo:hi:step, got '" + text + "'");
        double lo = parse_real(parts[0]), hi = parse_real(parts[1]), step = parse_real(parts[2]);
        if (!(step > 0) || !(hi >= lo)) fail(ErrorCode::DomainError, "grid needs step > 0 and hi >= lo");
        auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
        for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');)
        if (!trim(p).empty()) out.push_back(parse_real(p));
    if (out.empty()) fail(ErrorCode::DomainError, "empty grid");
    return out;
}

nlohmann::json to_json(double a, const rigidity::RigidityClass& c) {
    auto k = rigidity::constants();
    return {{"schema", 1},
            {"a", a},
            {"a0", k.a0},
            {"sqrt3_over_2", k.sqrt3_over_2},
            {"strong_h_plus", c.strong_h_plus},
            {"strong_h_minus", c.strong_h_minus},
            {"local_h_plus", c.local_h_plus},
            {"local_h_minus", c.local_h_minus}};
}

VerificationReport verify(const std::string& lemma, const VerifyOptions& o) {
    const double a0 = rigidity::a0();
    if (lemma == "h1") {
        std::vector<VerificationReport> parts;
        for (double a : or_default(o.a, {0.3, 0.4, a0, 0.6, 0.8})) parts.push_back(rigidity::verify_lemma_h1(a, o.eta, o.n));
        return suite("h1", std::move(parts));
    }
    if (lemma == "tundu") {
        std::vector<double> t = o.grid;
        if (t.empty()) {
            for (int i = 0; i < 16; ++i) t.push_back(0.02 + 0.03 * i);
            t.push_back(0.48);
        }
        return rigidity::verify_lemma_tundu(t);
    }
    if (lemma == "htwith1")
        return rigidity::verify_lemma_htwith1(or_default(o.a, {0.4, 0.8, a0}), or_default(o.grid, {0.995, 1.005}));
    if (lemma == "slices") {
        std::vector<double> t = o.grid;
        if (t.empty())
            for (int i = 0; i < 10; ++i) t.push_back(0.5 + 0.05 * i);
        return rigidity::verify_slice_curvatures(t);
    }
    if (lemma == "appendix-derivatives") {
        std::vector<double> a = o.grid.empty() ? o.a : o.grid;
        return rigidity::verify_appendix_derivatives(or_default(a, {0.3, 0.5, a0, 0.7, kSqrt3Over2}));
    }
    if (lemma == "elliptic-forms") return rigidity::verify_elliptic_forms(o.n == 50 ? 20 : o.n);
    if (lemma == "all") {
        std::vector<VerificationReport> parts;
        for (const auto& l : kLemmas)
            if (l != "all") parts.push_back(verify(l, VerifyOptions{{}, {}, o.eta, 50}));
        return suite("all", std::move(parts));
    }
    fail(ErrorCode::DomainError, "unknown lemma '" + lemma + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constant-mean-curvature profiles, rigidity thresholds and round-corner perturbations of "
                 "spherical zones",
                 "cmczone"};
    app.set_config("--config", "", "read options from a TOML/INI file; command-line flags take precedence");
    app.require_subcommand(1);

    CliConfig cfg;
    std::vector<std::string> a_text;
    std::string t_text, grid_text, lemma, mode, kind = "delaunay";
    double H = 1.0, eta = 0.005;
    int n = 50;

    auto* a0_cmd = app.add_subcommand("a0", "threshold a0 where g(a0) = 0");
    a0_cmd->add_option("--tol", cfg.root_tol, "root tolerance (also bounds the residual)")->check(CLI::PositiveNumber);
    a0_cmd->add_option("--format", cfg.format, "text (default) or json");

    auto* cls = app.add_subcommand("classify", "rigidity classification of the zone with parameter a");
    cls->add_option("--a", a_text, "zone parameter in (0, 1); 'a0' allowed")->required()->expected(1);
    cls->add_option("--out", cfg.out, "output file (default stdout)");

    auto* prof = app.add_subcommand("profile", "sample a Delaunay, undulary, tilde-c or hat-c profile");
    prof->add_option("--kind", kind, "delaunay | undulary | tilde | hat")
        ->check(CLI::IsMember({"delaunay", "undulary", "tilde", "hat"}));
    prof->add_option("--H", H, "mean curvature (delaunay)")->check(CLI::PositiveNumber);
    prof->add_option("--t", t_text, "height on the axis of symmetry")->required();
    prof->add_option("--a", a_text, "zone parameter (tilde, hat)")->expected(1);
    prof->add_option("--n", cfg.samples, "number of samples")->check(CLI::Range(2, 1000000));
    prof->add_option("--out", cfg.out, "output file (default stdout)");
    prof->add_option("--format", cfg.format, "csv or svg (default from --out, else csv)");

    auto* pert = app.add_subcommand("perturb", "build and certify a perturbation of the unit sphere");
    pert->add_option("--mode", mode, "global-hminus | global-hplus | local-hplus | local-hminus")->required();
    pert->add_option("--a", a_text, "zone parameter in (0, 1); 'a0' allowed")->required()->expected(1);
    pert->add_option("--t", t_text, "undulary neck t, or t' / t0' for the local modes (default: automatic)");
    pert->add_option("--tol", cfg.hbound_tol, "relative tolerance of the H bound")->check(CLI::PositiveNumber);
    pert->add_option("--out", cfg.out, "curve file (csv or svg)");
    pert->add_option("--format", cfg.format, "csv or svg (default from --out, else csv)");
    pert->add_option("--report", cfg.report, "certificate JSON (default stdout)");

    auto* ver = app.add_subcommand("verify", "run a numeric verifier and write its report");
    ver->add_option("--lemma", lemma, "verifier name")->required()->check(CLI::IsMember(kLemmas));
    ver->add_option("--a", a_text, "zone parameters ('a0' allowed)");
    ver->add_option("--grid", grid_text, "lo:hi:step or comma list");
    ver->add_option("--eta", eta, "h1: half-width around t = 1")->check(CLI::PositiveNumber);
    ver->add_option("--n", n, "h1: points per side; elliptic-forms: grid size")->check(CLI::Range(2, 100000));
    ver->add_option("--report", cfg.report, "report JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        cfg.validate();
        if (*a0_cmd) {
            if (!cfg.format.empty() && cfg.format != "json")
                fail(ErrorCode::DomainError, "a0 prints text or json");
            // The residual of a bisection stopped at width w is about g'(a0) w / 2; a
            // narrower bracket keeps |g(a0)| below the requested tolerance.
            double v = rigidity::compute_a0(cfg.root_tol / 8);
            double res = std::fabs(rigidity::g(v));
            if (cfg.format == "json") {
                out << nlohmann::json{{"schema", 1}, {"a0", v}, {"tol", cfg.root_tol}, {"residual", res}}.dump(2)
                    << "\n";
            } else {
                int digits = std::clamp(static_cast<int>(std::ceil(-std::log10(cfg.root_tol))) + 1, 3, 17);
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.*g\n", digits, v);
                out << buf;
                std::snprintf(buf, sizeof buf, "residual |g(a0)| = %.3e\n", res);
                out << buf;
            }
            return kPass;
        }
        if (*cls) {
            double a = parse_real(a_text.at(0));
            emit(cfg.out, to_json(a, rigidity::classify(a)).dump(2) + "\n", out);
            return kPass;
        }
        if (*prof) {
            double t = parse_real(t_text);
            std::string fmt = format_for(cfg.format, cfg.out, "csv");
            PlanarCurve c;
            if (kind == "delaunay") {
                c = sample_profile(H, t, profile_x3_max(H, t), cfg.samples);
            } else if (kind == "undulary") {
                c = sample_profile(1.0, t, undulary_half_period(t), cfg.samples);
            } else {
                if (a_text.empty()) fail(ErrorCode::DomainError, "--a is required for kind " + kind);
                ZoneSpec z = ZoneSpec::make(parse_real(a_text.at(0)));
                double h = kind == "tilde" ? H_of_t(z, t) : 1.0;
                c = sample_profile(h, t, z.w3(), cfg.samples);
            }
            emit(cfg.out, curve_text(c, fmt), out);
            return kPass;
        }
        if (*pert) {
            Mode m = parse_mode(mode);
            double a = parse_real(a_text.at(0));
            std::optional<double> t;
            if (!t_text.empty()) t = parse_real(t_text);
            try {
                auto t0 = std::chrono::steady_clock::now();
                PerturbationResult r = build(m, a, t);
                VerificationReport cert = certify(r, cfg.hbound_tol);
                nlohmann::json j = cmczone::to_json(cert);
                j["mode"] = to_string(m);
                j["construction_log"] = r.construction_log;
                if (!cfg.out.empty()) emit(cfg.out, curve_text(r.curve, format_for(cfg.format, cfg.out, "csv")), out);
                emit(cfg.report, j.dump(2) + "\n", out);
                err << summary(cert);
                err << "wall_seconds " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                    << "\n";
                return cert.pass ? kPass : kFail;
            } catch (const Error& e) {
                if (exit_for(e.code()) == kUsage) throw;
                nlohmann::json j{{"schema", 1},
                                 {"lemma", std::string("perturbation/") + to_string(m)},
                                 {"pass", false},
                                 {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
                emit(cfg.report, j.dump(2) + "\n", out);
                err << "error: " << e.what() << "\n";
                return kFail;
            }
        }
        if (*ver) {
            VerifyOptions o;
            for (const auto& s : a_text)
                for (double v : parse_grid(s)) o.a.push_back(v);
            if (!grid_text.empty()) o.grid = parse_grid(grid_text);
            o.eta = eta;
            o.n = n;
            auto t0 = std::chrono::steady_clock::now();
            VerificationReport r = verify(lemma, o);
            emit(cfg.report, dump(r), out);
            err << summary(r);
            for (const auto& s : r.sections) err << "  " << summary(s);
            err << "wall_seconds " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                << "\n";
            return r.pass ? kPass : kFail;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e.code());
    }
    return kUsage;
}

}  // namespace cmczone::cli
