#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cmczone {

// A point of the meridian half-plane, stored as (x3, x1): x3 runs along the
// rotation axis, x1 is the distance to it.
struct Point {
    double x3 = 0.0;
    double x1 = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x3 + b.x3, a.x1 + b.x1}; }
inline Point operator-(Point a, Point b) { return {a.x3 - b.x3, a.x1 - b.x1}; }
inline Point operator*(double k, Point a) { return {k * a.x3, k * a.x1}; }
double norm(Point a);
double dist(Point a, Point b);

// Frame conventions used throughout:
//   T = (cos theta, sin theta) in (x3, x1) coordinates,
//   n = (sin theta, -cos theta), i.e. T turned clockwise,
//   kappa = <dT/ds, n>, hence d theta/ds = -kappa.
// A curve traversed in the +x3 direction has n pointing toward the axis, and
// 2H = kappa + cos(theta) / x1 is the mean curvature of the surface obtained by
// rotating it about the x3-axis. The unit circle run clockwise has kappa = 1, H = 1.
Point tangent(double theta);
Point normal(double theta);

struct State {
    double x3 = 0.0;
    double x1 = 0.0;
    double theta = 0.0;
    Point pos() const { return {x3, x1}; }
};

struct Sample {
    double s = 0.0;
    Point pos;
    double theta = 0.0;
    double kappa = 0.0;
};

struct PlanarCurve {
    std::vector<Sample> samples;
    // +1: n is T turned clockwise (the convention above). Kept as data so that
    // serialized curves state which convention their kappa column uses.
    int orientation = +1;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double s_front() const { return samples.front().s; }
    double s_back() const { return samples.back().s; }
};

// Curvature may depend on arc length and on the current state; laws of the
// form kappa(s) ignore the second argument.
using CurvatureLaw = std::function<double(double s, const State& q)>;

struct CurvatureProfile {
    double s_lo = 0.0;
    double s_hi = 0.0;
    CurvatureLaw kappa;
    double s_start = 0.0;
    State seed;

    static CurvatureProfile of_arclength(std::function<double(double)> k, double s_lo, double s_hi,
                                         double s_start, Point pos, double theta);
};

// Classical RK4 with fixed step from the seed outward in both directions. The
// last step toward each end is shortened so s_lo and s_hi are hit exactly.
PlanarCurve reconstruct(const CurvatureProfile& profile, double step);

// Dense evaluation of a reconstructed curve: the cached RK4 nodes plus one
// partial step to reach arbitrary s.
class CurveEvaluator {
public:
    CurveEvaluator(CurvatureProfile profile, double step);

    const PlanarCurve& curve() const { return curve_; }
    const CurvatureProfile& profile() const { return profile_; }
    double step() const { return step_; }
    State state_at(double s) const;
    double kappa_at(double s) const;
    double s_lo() const { return profile_.s_lo; }
    double s_hi() const { return profile_.s_hi; }

private:
    CurvatureProfile profile_;
    double step_;
    PlanarCurve curve_;
};

// One RK4 step of (x3, x1, theta)' = (cos theta, sin theta, -kappa(s, q)).
State rk4_step(const CurvatureLaw& kappa, double s, const State& q, double h);

// Mean curvature at a sample: (kappa + cos(theta)/x1) / 2.
double mean_curvature(const Sample& sample);
// Linear interpolation of the sampled quantities at arc length s.
double mean_curvature(const PlanarCurve& curve, double s);
// Graph form x1 = c(x3): H = (c / sqrt(1 + c'^2))' / (c^2)' with c' cancelled.
double mean_curvature_graph(double c, double dc, double ddc);
// Curvature of the graph x1 = c(x3) traversed in +x3, in the convention above.
double graph_kappa(double dc, double ddc);

struct Intersection {
    bool found = false;
    std::size_t first = 0;   // segment i joins samples i and i+1
    std::size_t second = 0;
};

// Non-adjacent polyline segments that touch or cross. Segments sharing an
// endpoint (including the closing pair of a closed polyline) are adjacent.
Intersection self_intersects(const PlanarCurve& curve);

// Symmetric discrete Hausdorff distance between the sample polylines.
double hausdorff_to(const PlanarCurve& curve, const PlanarCurve& reference);
// Largest distance from any sample of `curve` to the polyline `reference`.
double directed_distance(const PlanarCurve& curve, const PlanarCurve& reference);

// Reflection x3 -> -x3 with reversed traversal: theta -> -theta, kappa kept,
// s -> s_pivot*2 - s.
PlanarCurve mirror(const PlanarCurve& curve, double s_pivot);

void write_csv(const PlanarCurve& curve, std::ostream& os);
std::string to_csv(const PlanarCurve& curve);
PlanarCurve read_csv(std::istream& is);
void write_svg(const PlanarCurve& curve, std::ostream& os);
std::string to_svg(const PlanarCurve& curve);

}  // namespace cmczone
