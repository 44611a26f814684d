#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace diskhull {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

// Orientation of the turn a -> b -> c; positive means counterclockwise.
constexpr double cross(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

inline double norm2(Point2 p) { return dot(p, p); }
inline double norm(Point2 p) { return std::sqrt(norm2(p)); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline Point2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Discretized trajectory; the first vertex is the process start.
using PolygonalPath = std::vector<Point2>;

// Vertices in counterclockwise order with strict turns only (no three
// collinear). One- and two-vertex polygons are legal degenerate hulls; the
// closing edge is implicit.
struct ConvexPolygon {
    std::vector<Point2> vertices;
};

namespace detail {

inline bool lex_less(Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

}  // namespace detail

// Monotone chain. Collinear boundary points are dropped (orientation tests
// use the exact sign of the cross product, ties count as collinear), so the
// vertex sequence is strictly convex. All-collinear input collapses to the
// two extreme points; a single distinct point stays a 1-vertex polygon.
inline ConvexPolygon convex_hull(std::span<const Point2> points) {
    if (points.empty()) {
        throw std::invalid_argument("convex_hull: empty point set");
    }
    for (const Point2& p : points) {
        if (!is_finite(p)) {
            throw std::invalid_argument("convex_hull: non-finite coordinate");
        }
    }
    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), detail::lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) {
        return ConvexPolygon{std::move(pts)};
    }
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i > 0; --i) {  // upper chain
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0.0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return ConvexPolygon{std::move(hull)};
}

// Shoelace value; 0 for fewer than 3 vertices. Nonnegative for ccw input.
inline double polygon_area(const ConvexPolygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(v[i], v[(i + 1) % n]);
    }
    return 0.5 * twice;
}

// Edge lengths including the closing edge. A segment counts out and back
// (Per = 2 * length), consistent with Cauchy's formula; a single vertex is 0.
inline double polygon_perimeter(const ConvexPolygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += norm(v[(i + 1) % n] - v[i]);
    }
    return total;
}

inline constexpr double kRayParallelEps = 1e-14;  // |det| cutoff for the 2x2 solve
inline constexpr double kOnRayEps = 1e-12;        // endpoint-on-ray tolerance

// Largest admissible rho for the ray {rho e : rho >= 0} against the segment
// [p, q], solving rho*e = (1-s)p + s*q with rho >= 0, s in [0, 1]. Segments
// with |det| below kRayParallelEps contribute only endpoints that lie on the
// ray within kOnRayEps. Returns -1 when the segment misses the ray.
inline double ray_segment_max_rho(Point2 e, Point2 p, Point2 q) {
    const Point2 d = q - p;
    const double det = cross(d, e);
    if (std::abs(det) < kRayParallelEps) {
        double best = -1.0;
        for (const Point2 z : {p, q}) {
            if (std::abs(cross(e, z)) <= kOnRayEps) {
                const double rho = dot(e, z);
                if (rho >= 0.0 && rho > best) best = rho;
            }
        }
        return best;
    }
    const double s = cross(e, p) / det;
    if (s < 0.0 || s > 1.0) return -1.0;
    const double rho = cross(d, p) / det;
    return rho >= 0.0 ? rho : -1.0;
}

// Radial function r(theta) of an origin-anchored polygonal trace: the largest
// rho >= 0 with rho*e_theta on some segment. The start vertex keeps 0 always
// admissible.
inline double ray_polyline_max_intersection(double theta, std::span<const Point2> path) {
    if (path.empty()) {
        throw std::invalid_argument("ray_polyline_max_intersection: empty path");
    }
    const Point2 e = unit_vector(theta);
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        best = std::max(best, ray_segment_max_rho(e, path[i], path[i + 1]));
    }
    return best;
}

struct DirectionalMax {
    double value = 0.0;
    std::size_t argmax = 0;  // first occurrence on ties
};

// Polygonal support function h(theta) = max_i <w_i, e_theta>, with the index
// of the attaining vertex.
inline DirectionalMax directional_max(double theta, std::span<const Point2> path) {
    if (path.empty()) {
        throw std::invalid_argument("directional_max: empty path");
    }
    const Point2 e = unit_vector(theta);
    DirectionalMax out{dot(path[0], e), 0};
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double v = dot(path[i], e);
        if (v > out.value) {
            out.value = v;
            out.argmax = i;
        }
    }
    return out;
}

// Strict interior test via binary search on the triangle fan from vertex 0.
// Boundary points report false.
inline bool point_strictly_inside(const ConvexPolygon& poly, Point2 p) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) return false;
    if (cross(v[0], v[1], p) <= 0.0) return false;
    if (cross(v[0], v[n - 1], p) >= 0.0) return false;
    std::size_t lo = 1, hi = n - 1;
    while (hi - lo > 1) {  // invariant: p is left of spoke lo, right of spoke hi
        const std::size_t mid = (lo + hi) / 2;
        if (cross(v[0], v[mid], p) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return cross(v[lo], v[lo + 1], p) > 0.0;
}

// Incremental hull of a streamed point sequence. Points strictly inside the
// current hull are discarded immediately; the rest are buffered and folded in
// by a monotone-chain rebuild once the buffer fills. The final hull is
// identical to convex_hull over the whole sequence (interior points can never
// become hull vertices).
class HullAccumulator {
public:
    explicit HullAccumulator(std::size_t rebuild_threshold = 512)
        : threshold_(rebuild_threshold) {}

    void add(Point2 p) {
        if (point_strictly_inside(hull_, p)) return;
        pending_.push_back(p);
        if (pending_.size() >= threshold_) rebuild();
    }

    const ConvexPolygon& finish() {
        if (!pending_.empty()) rebuild();
        return hull_;
    }

private:
    void rebuild() {
        pending_.insert(pending_.end(), hull_.vertices.begin(), hull_.vertices.end());
        hull_ = convex_hull(pending_);
        pending_.clear();
    }

    ConvexPolygon hull_;
    std::vector<Point2> pending_;
    std::size_t threshold_;
};

// All m radial-function values r(theta_k), theta_k = 2 pi k / m, in one sweep
// over the path. The argument of a point moving along a segment is monotone
// (d/dt arg = cross(p, q - p) / |x|^2 has constant sign), so a segment can
// only meet rays inside the short angular interval between its endpoints;
// that interval is scanned padded by one grid cell. Segments with an endpoint
// within 1e-6 of the origin, or subtending nearly pi, are tested against all
// rays. Agrees with ray_polyline_max_intersection on every ray.
inline std::vector<double> radial_profile(std::span<const Point2> path, int m_directions) {
    if (m_directions < 1) {
        throw std::invalid_argument("radial_profile: need at least one direction");
    }
    const std::size_t m = static_cast<std::size_t>(m_directions);
    std::vector<double> r(m, 0.0);
    if (path.size() < 2) return r;

    const double two_pi = 2.0 * std::acos(-1.0);
    const double dtheta = two_pi / static_cast<double>(m);
    std::vector<Point2> dirs(m);
    for (std::size_t k = 0; k < m; ++k) {
        // identical rounding to a per-ray call at theta_k = 2 pi k / m
        dirs[k] = unit_vector(two_pi * static_cast<double>(k) / static_cast<double>(m));
    }

    const auto test_ray = [&](std::size_t k, Point2 p, Point2 q) {
        const double rho = ray_segment_max_rho(dirs[k], p, q);
        if (rho > r[k]) r[k] = rho;
    };

    double carried_angle = 0.0;  // angle of path[i] when valid, saving one atan2 per segment
    bool carried_valid = false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Point2 p = path[i];
        const Point2 q = path[i + 1];
        const bool q_near_origin = norm2(q) < 1e-12;
        bool full_scan = q_near_origin || norm2(p) < 1e-12;
        double lo = 0.0, hi = 0.0;
        if (!full_scan) {
            const double ap = carried_valid ? carried_angle : std::atan2(p.y, p.x);
            const double aq = std::atan2(q.y, q.x);
            carried_angle = aq;
            carried_valid = true;
            double diff = aq - ap;
            if (diff > two_pi / 2.0) diff -= two_pi;
            if (diff <= -two_pi / 2.0) diff += two_pi;
            if (std::abs(diff) > two_pi / 2.0 - 1e-9) {
                full_scan = true;  // segment numerically through the origin
            } else {
                lo = std::min(ap, ap + diff) - dtheta;
                hi = std::max(ap, ap + diff) + dtheta;
            }
        } else {
            carried_valid = false;
        }
        if (full_scan) {
            for (std::size_t k = 0; k < m; ++k) test_ray(k, p, q);
            continue;
        }
        const long k_lo = static_cast<long>(std::floor(lo / dtheta)) - 1;
        const long k_hi = static_cast<long>(std::ceil(hi / dtheta)) + 1;
        const long lm = static_cast<long>(m);
        for (long k = k_lo; k <= k_hi; ++k) {
            test_ray(static_cast<std::size_t>(((k % lm) + lm) % lm), p, q);
        }
    }
    return r;
}

}  // namespace diskhull
