#include "cmczone/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cmczone/error.hpp"

namespace cmczone {

namespace {

constexpr double kAxisTol = 1e-12;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double cross(Point a, Point b) { return a.x3 * b.x1 - a.x1 * b.x3; }

int sgn(double v) { return (v > 0) - (v < 0); }

bool on_segment(Point a, Point b, Point p) {
    return std::min(a.x3, b.x3) <= p.x3 && p.x3 <= std::max(a.x3, b.x3) &&
           std::min(a.x1, b.x1) <= p.x1 && p.x1 <= std::max(a.x1, b.x1);
}

bool segments_touch(Point a, Point b, Point c, Point d) {
    int o1 = sgn(cross(b - a, c - a));
    int o2 = sgn(cross(b - a, d - a));
    int o3 = sgn(cross(d - c, a - c));
    int o4 = sgn(cross(d - c, b - c));
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = ab.x3 * ab.x3 + ab.x1 * ab.x1;
    if (len2 == 0.0) return dist(p, a);
    Point ap = p - a;
    double u = std::clamp((ap.x3 * ab.x3 + ap.x1 * ab.x1) / len2, 0.0, 1.0);
    return dist(p, a + u * ab);
}

// Uniform bucket grid over the segments of a polyline for nearest-segment queries.
class SegmentGrid {
public:
    explicit SegmentGrid(const PlanarCurve& c) : pts_(c.samples.size()) {
        for (std::size_t i = 0; i < c.samples.size(); ++i) pts_[i] = c.samples[i].pos;
        lo_ = hi_ = pts_.front();
        for (auto p : pts_) {
            lo_.x3 = std::min(lo_.x3, p.x3);
            lo_.x1 = std::min(lo_.x1, p.x1);
            hi_.x3 = std::max(hi_.x3, p.x3);
            hi_.x1 = std::max(hi_.x1, p.x1);
        }
        std::size_t nseg = pts_.size() > 1 ? pts_.size() - 1 : 1;
        double extent = std::max({hi_.x3 - lo_.x3, hi_.x1 - lo_.x1, 1e-12});
        cell_ = extent / std::max(1.0, std::sqrt(static_cast<double>(nseg)));
        nx_ = static_cast<long>((hi_.x3 - lo_.x3) / cell_) + 1;
        ny_ = static_cast<long>((hi_.x1 - lo_.x1) / cell_) + 1;
        cells_.assign(static_cast<std::size_t>(nx_ * ny_), {});
        if (pts_.size() == 1) {
            cells_[0].push_back(0);
            return;
        }
        for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
            Point a = pts_[i], b = pts_[i + 1];
            long x0 = cx(std::min(a.x3, b.x3)), x1 = cx(std::max(a.x3, b.x3));
            long y0 = cy(std::min(a.x1, b.x1)), y1 = cy(std::max(a.x1, b.x1));
            for (long x = x0; x <= x1; ++x)
                for (long y = y0; y <= y1; ++y) cells_[static_cast<std::size_t>(x * ny_ + y)].push_back(i);
        }
    }

    double distance(Point p) const {
        long px = cx(p.x3), py = cy(p.x1);
        double best = std::numeric_limits<double>::infinity();
        long rmax = std::max(nx_, ny_) + 1;
        // Points outside the box still find the nearest cells first.
        double outside = std::hypot(std::max({lo_.x3 - p.x3, 0.0, p.x3 - hi_.x3}),
                                    std::max({lo_.x1 - p.x1, 0.0, p.x1 - hi_.x1}));
        for (long r = 0; r <= rmax; ++r) {
            for (long x = px - r; x <= px + r; ++x) {
                for (long y = py - r; y <= py + r; ++y) {
                    if (std::max(std::labs(x - px), std::labs(y - py)) != r) continue;
                    if (x < 0 || y < 0 || x >= nx_ || y >= ny_) continue;
                    for (std::size_t i : cells_[static_cast<std::size_t>(x * ny_ + y)]) {
                        double d = pts_.size() == 1 ? dist(p, pts_[0])
                                                    : point_segment_distance(p, pts_[i], pts_[i + 1]);
                        best = std::min(best, d);
                    }
                }
            }
            if (best <= std::max(outside, static_cast<double>(r) * cell_)) break;
        }
        return best;
    }

private:
    long cx(double v) const { return std::clamp(static_cast<long>((v - lo_.x3) / cell_), 0L, nx_ - 1); }
    long cy(double v) const { return std::clamp(static_cast<long>((v - lo_.x1) / cell_), 0L, ny_ - 1); }

    std::vector<Point> pts_;
    Point lo_, hi_;
    double cell_ = 1.0;
    long nx_ = 1, ny_ = 1;
    std::vector<std::vector<std::size_t>> cells_;
};

std::vector<double> node_grid(double from, double to, double step) {
    // Nodes from..to (either direction) spaced by step, last one clamped to `to`.
    std::vector<double> s{from};
    double span = std::fabs(to - from);
    if (span == 0.0) return s;
    double dir = to > from ? 1.0 : -1.0;
    auto n = static_cast<long>(std::ceil(span / step - 1e-9));
    for (long k = 1; k < n; ++k) s.push_back(from + dir * static_cast<double>(k) * step);
    s.push_back(to);
    return s;
}

}  // namespace

double norm(Point a) { return std::hypot(a.x3, a.x1); }
double dist(Point a, Point b) { return norm(a - b); }
Point tangent(double theta) { return {std::cos(theta), std::sin(theta)}; }
Point normal(double theta) { return {std::sin(theta), -std::cos(theta)}; }

CurvatureProfile CurvatureProfile::of_arclength(std::function<double(double)> k, double s_lo, double s_hi,
                                                double s_start, Point pos, double theta) {
    CurvatureProfile p;
    p.s_lo = s_lo;
    p.s_hi = s_hi;
    p.kappa = [k = std::move(k)](double s, const State&) { return k(s); };
    p.s_start = s_start;
    p.seed = {pos.x3, pos.x1, theta};
    return p;
}

State rk4_step(const CurvatureLaw& kappa, double s, const State& q, double h) {
    auto rhs = [&](double ss, const State& y) {
        return State{std::cos(y.theta), std::sin(y.theta), -kappa(ss, y)};
    };
    auto add = [](const State& y, double c, const State& d) {
        return State{y.x3 + c * d.x3, y.x1 + c * d.x1, y.theta + c * d.theta};
    };
    State k1 = rhs(s, q);
    State k2 = rhs(s + h / 2, add(q, h / 2, k1));
    State k3 = rhs(s + h / 2, add(q, h / 2, k2));
    State k4 = rhs(s + h, add(q, h, k3));
    return State{q.x3 + h / 6 * (k1.x3 + 2 * k2.x3 + 2 * k3.x3 + k4.x3),
                 q.x1 + h / 6 * (k1.x1 + 2 * k2.x1 + 2 * k3.x1 + k4.x1),
                 q.theta + h / 6 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta)};
}

PlanarCurve reconstruct(const CurvatureProfile& profile, double step) {
    if (!(step > 0)) fail(ErrorCode::DomainError, "reconstruct: step must be positive");
    if (!(profile.s_lo <= profile.s_start && profile.s_start <= profile.s_hi))
        fail(ErrorCode::DomainError, "reconstruct: seed outside the domain");
    if (!profile.kappa) fail(ErrorCode::DomainError, "reconstruct: missing curvature law");
    if (!(profile.seed.x1 > 0)) fail(ErrorCode::DomainExit, "reconstruct: seed not in x1 > 0");

    auto march = [&](double to) {
        std::vector<double> s = node_grid(profile.s_start, to, step);
        std::vector<Sample> out;
        out.reserve(s.size());
        State q = profile.seed;
        out.push_back({s[0], q.pos(), q.theta, profile.kappa(s[0], q)});
        for (std::size_t i = 1; i < s.size(); ++i) {
            q = rk4_step(profile.kappa, s[i - 1], q, s[i] - s[i - 1]);
            if (!(q.x1 > 0) || !std::isfinite(q.theta))
                fail(ErrorCode::DomainExit, "reconstruct: reached x1 <= 0 at s = " + fmt17(s[i]));
            out.push_back({s[i], q.pos(), q.theta, profile.kappa(s[i], q)});
        }
        return out;
    };

    PlanarCurve c;
    std::vector<Sample> back = march(profile.s_lo);
    std::vector<Sample> fwd = march(profile.s_hi);
    c.samples.assign(back.rbegin(), back.rend());
    c.samples.insert(c.samples.end(), fwd.begin() + 1, fwd.end());
    return c;
}

CurveEvaluator::CurveEvaluator(CurvatureProfile profile, double step)
    : profile_(std::move(profile)), step_(step), curve_(reconstruct(profile_, step)) {}

State CurveEvaluator::state_at(double s) const {
    const auto& v = curve_.samples;
    double slack = 1e-12 * std::max(1.0, std::fabs(s));
    if (s < v.front().s - slack || s > v.back().s + slack)
        fail(ErrorCode::DomainExit, "curve evaluated outside its domain at s = " + fmt17(s));
    auto it = std::lower_bound(v.begin(), v.end(), s, [](const Sample& a, double x) { return a.s < x; });
    std::size_t i = static_cast<std::size_t>(it - v.begin());
    if (i == v.size()) i = v.size() - 1;
    if (i > 0 && std::fabs(v[i - 1].s - s) < std::fabs(v[i].s - s)) --i;
    const Sample& n = v[i];
    State q{n.pos.x3, n.pos.x1, n.theta};
    if (n.s == s) return q;
    return rk4_step(profile_.kappa, n.s, q, s - n.s);
}

double CurveEvaluator::kappa_at(double s) const { return profile_.kappa(s, state_at(s)); }

double mean_curvature(const Sample& sample) {
    if (!(sample.pos.x1 > kAxisTol))
        fail(ErrorCode::AxisContact, "mean curvature requested at x1 = " + fmt17(sample.pos.x1));
    return 0.5 * (sample.kappa + std::cos(sample.theta) / sample.pos.x1);
}

double mean_curvature(const PlanarCurve& curve, double s) {
    const auto& v = curve.samples;
    if (v.empty()) fail(ErrorCode::DomainError, "mean curvature of an empty curve");
    if (s < v.front().s || s > v.back().s)
        fail(ErrorCode::DomainError, "mean curvature requested outside the curve domain");
    auto it = std::lower_bound(v.begin(), v.end(), s, [](const Sample& a, double x) { return a.s < x; });
    if (it == v.begin() || it->s == s) return mean_curvature(*it);
    const Sample& b = *it;
    const Sample& a = *(it - 1);
    double u = (s - a.s) / (b.s - a.s);
    Sample m{s,
             {a.pos.x3 + u * (b.pos.x3 - a.pos.x3), a.pos.x1 + u * (b.pos.x1 - a.pos.x1)},
             a.theta + u * (b.theta - a.theta),
             a.kappa + u * (b.kappa - a.kappa)};
    return mean_curvature(m);
}

double mean_curvature_graph(double c, double dc, double ddc) {
    if (!(c > kAxisTol)) fail(ErrorCode::AxisContact, "graph mean curvature at c = " + fmt17(c));
    double w = 1.0 + dc * dc;
    return 0.5 * (1.0 / (c * std::sqrt(w)) - ddc / (w * std::sqrt(w)));
}

double graph_kappa(double dc, double ddc) {
    double w = 1.0 + dc * dc;
    return -ddc / (w * std::sqrt(w));
}

Intersection self_intersects(const PlanarCurve& curve) {
    Intersection result;
    const auto& v = curve.samples;
    if (v.size() < 4) return result;
    std::size_t m = v.size() - 1;
    bool closed = v.front().pos.x3 == v.back().pos.x3 && v.front().pos.x1 == v.back().pos.x1;

    struct Box { double x0, x1, y0, y1; };
    std::vector<Box> box(m);
    for (std::size_t i = 0; i < m; ++i) {
        Point a = v[i].pos, b = v[i + 1].pos;
        box[i] = {std::min(a.x3, b.x3), std::max(a.x3, b.x3), std::min(a.x1, b.x1), std::max(a.x1, b.x1)};
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return box[a].x0 < box[b].x0; });

    // Sweep along x3 keeping segments whose x3-range still overlaps.
    std::vector<std::size_t> active;
    for (std::size_t i : order) {
        std::erase_if(active, [&](std::size_t j) { return box[j].x1 < box[i].x0; });
        for (std::size_t j : active) {
            std::size_t lo = std::min(i, j), hi = std::max(i, j);
            if (hi - lo <= 1) continue;
            if (closed && lo == 0 && hi == m - 1) continue;
            if (box[i].y1 < box[j].y0 || box[j].y1 < box[i].y0) continue;
            if (segments_touch(v[lo].pos, v[lo + 1].pos, v[hi].pos, v[hi + 1].pos)) {
                if (!result.found || lo < result.first || (lo == result.first && hi < result.second))
                    result = {true, lo, hi};
            }
        }
        active.push_back(i);
    }
    return result;
}

double directed_distance(const PlanarCurve& curve, const PlanarCurve& reference) {
    if (curve.empty() || reference.empty()) fail(ErrorCode::DomainError, "distance between empty curves");
    SegmentGrid grid(reference);
    double worst = 0.0;
    for (const auto& s : curve.samples) worst = std::max(worst, grid.distance(s.pos));
    return worst;
}

double hausdorff_to(const PlanarCurve& curve, const PlanarCurve& reference) {
    return std::max(directed_distance(curve, reference), directed_distance(reference, curve));
}

PlanarCurve mirror(const PlanarCurve& curve, double s_pivot) {
    PlanarCurve out;
    out.orientation = curve.orientation;
    out.samples.reserve(curve.size());
    for (auto it = curve.samples.rbegin(); it != curve.samples.rend(); ++it)
        out.samples.push_back({2 * s_pivot - it->s, {-it->pos.x3, it->pos.x1}, -it->theta, it->kappa});
    return out;
}

void write_csv(const PlanarCurve& curve, std::ostream& os) {
    os << "s,x3,x1,theta,kappa\n";
    for (const auto& p : curve.samples)
        os << fmt17(p.s) << ',' << fmt17(p.pos.x3) << ',' << fmt17(p.pos.x1) << ',' << fmt17(p.theta) << ','
           << fmt17(p.kappa) << '\n';
}

std::string to_csv(const PlanarCurve& curve) {
    std::ostringstream os;
    write_csv(curve, os);
    return os.str();
}

PlanarCurve read_csv(std::istream& is) {
    PlanarCurve c;
    std::string line;
    if (!std::getline(is, line) || line != "s,x3,x1,theta,kappa")
        fail(ErrorCode::DomainError, "curve CSV: unexpected header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Sample s;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &s.s, &s.pos.x3, &s.pos.x1, &s.theta, &s.kappa) != 5)
            fail(ErrorCode::DomainError, "curve CSV: malformed row '" + line + "'");
        c.samples.push_back(s);
    }
    return c;
}

void write_svg(const PlanarCurve& curve, std::ostream& os) {
    // Fixed view: x3 in [-3.2, 3.2], x1 in [-0.5, 3.2]; SVG y grows downward so y = -x1.
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-3.2 -3.2 6.4 3.7\" width=\"960\" height=\"555\">\n";
    os << "<line x1=\"-3.2\" y1=\"0\" x2=\"3.2\" y2=\"0\" stroke=\"#888\" stroke-width=\"0.005\"/>\n";
    os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#bbb\" stroke-width=\"0.004\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#c00\" stroke-width=\"0.006\" points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& p = curve.samples[i].pos;
        if (i) os << ' ';
        os << num(p.x3) << ',' << num(-p.x1);
    }
    os << "\"/>\n</svg>\n";
}

std::string to_svg(const PlanarCurve& curve) {
    std::ostringstream os;
    write_svg(curve, os);
    return os.str();
}

}  // namespace cmczone
