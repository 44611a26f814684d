#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diskhull/geometry.hpp"
#include "diskhull/rng.hpp"

namespace diskhull {

enum class BoundaryMode {
    FirstExterior,       // stop at the first sample with |w| >= 1
    CircleInterpolated,  // replace the final segment by its circle crossing
};

inline const char* to_string(BoundaryMode mode) {
    return mode == BoundaryMode::FirstExterior ? "first-exterior" : "circle-interpolated";
}

struct SimulationConfig {
    double dt = 1e-5;
    std::uint64_t master_seed = 123456789;
    BoundaryMode boundary_mode = BoundaryMode::FirstExterior;
    std::uint64_t max_steps = 0;  // 0 selects the default cap of 100 time units

    std::uint64_t effective_max_steps() const {
        if (max_steps != 0) return max_steps;
        return static_cast<std::uint64_t>(std::ceil(100.0 / dt));
    }

    // The exit time has mean 1/2; the cap must sit far in the tail.
    void validate() const {
        if (!(dt > 0.0) || dt > 1.0) {
            throw std::invalid_argument("SimulationConfig: dt must lie in (0, 1]");
        }
        if (static_cast<double>(effective_max_steps()) * dt < 100.0) {
            throw std::invalid_argument("SimulationConfig: max_steps * dt must be >= 100");
        }
    }
};

struct PathSample {
    PolygonalPath path;
    Point2 exit_point{};
    std::uint64_t n_steps = 0;
    bool capped = false;
};

struct PathEnd {
    Point2 exit_point{};
    std::uint64_t n_steps = 0;
    bool capped = false;
};

namespace detail {

// Crossing of the segment p -> q (|p| < 1 <= |q|) with the unit circle,
// renormalized onto the circle.
inline Point2 circle_crossing(Point2 p, Point2 q) {
    const Point2 d = q - p;
    const double a = norm2(d);
    const double b = dot(p, d);
    const double c = norm2(p) - 1.0;
    const double t = (-b + std::sqrt(b * b - a * c)) / a;
    Point2 z = p + t * d;
    const double n = norm(z);
    return {z.x / n, z.y / n};
}

}  // namespace detail

// Brownian trajectory from the origin, Gaussian steps of component variance
// dt, killed at the unit circle. Every vertex (including the origin and the
// final one) is passed to `visit` in order; storage is the caller's choice.
// The config is taken as given (callers validate); the step cap is honored
// exactly, returning a capped sample rather than failing.
template <class Visit>
PathEnd walk_bm_path(const SimulationConfig& config, std::uint64_t stream_id, Visit&& visit) {
    RngStream rng = derive_stream(config.master_seed, stream_id);
    const double step_scale = std::sqrt(config.dt);
    const std::uint64_t cap = config.effective_max_steps();

    Point2 w{0.0, 0.0};
    visit(w);
    for (std::uint64_t n = 1; n <= cap; ++n) {
        const auto [gx, gy] = rng.next_gaussian_pair();
        const Point2 prev = w;
        w.x += gx * step_scale;
        w.y += gy * step_scale;
        if (norm2(w) >= 1.0) {
            if (config.boundary_mode == BoundaryMode::CircleInterpolated) {
                w = detail::circle_crossing(prev, w);
            }
            visit(w);
            return {w, n, false};
        }
        visit(w);
    }
    return {w, cap, true};
}

inline PathSample sample_bm_until_disk_exit(const SimulationConfig& config,
                                            std::uint64_t stream_id) {
    config.validate();
    PathSample sample;
    const PathEnd end = walk_bm_path(config, stream_id,
                                     [&](Point2 w) { sample.path.push_back(w); });
    sample.exit_point = end.exit_point;
    sample.n_steps = end.n_steps;
    sample.capped = end.capped;
    return sample;
}

struct LatticePath {
    std::vector<std::pair<std::int32_t, std::int32_t>> sites;  // starts at (0, 0)
    int kill_radius = 0;
};

// Simple random walk on Z^2 from the origin, stopped at the first site with
// Euclidean norm exceeding kill_radius. Each step consumes two bits of one
// Philox word, so the walk is a pure function of (master_seed, stream_id).
inline LatticePath sample_lattice_walk(int kill_radius, std::uint64_t master_seed,
                                       std::uint64_t stream_id) {
    if (kill_radius < 1) {
        throw std::invalid_argument("sample_lattice_walk: kill_radius must be >= 1");
    }
    constexpr std::uint64_t kHardCap = 1'000'000'000;
    RngStream rng = derive_stream(master_seed, stream_id);
    const std::int64_t r2 = static_cast<std::int64_t>(kill_radius) * kill_radius;

    LatticePath walk;
    walk.kill_radius = kill_radius;
    walk.sites.reserve(static_cast<std::size_t>(r2) + 16);
    std::int32_t x = 0, y = 0;
    walk.sites.push_back({x, y});
    std::uint64_t bits = 0;
    int bits_left = 0;
    for (std::uint64_t n = 0; n < kHardCap; ++n) {
        if (bits_left == 0) {
            bits = rng.next_u64();
            bits_left = 32;
        }
        switch (bits & 3u) {
            case 0: ++x; break;
            case 1: --x; break;
            case 2: ++y; break;
            default: --y; break;
        }
        bits >>= 2;
        --bits_left;
        walk.sites.push_back({x, y});
        const std::int64_t d2 =
            static_cast<std::int64_t>(x) * x + static_cast<std::int64_t>(y) * y;
        if (d2 > r2) return walk;
    }
    throw std::runtime_error("sample_lattice_walk: hard step cap exceeded");
}

}  // namespace diskhull
