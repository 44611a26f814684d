#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diskhull/sampling.hpp"

namespace diskhull {

namespace detail {

// Dense edge raster over the walk's bounding box: bit 0 marks the unit edge
// east of a site, bit 1 the edge north of it.
struct EdgeGrid {
    std::int32_t min_x = 0, min_y = 0;
    std::int64_t width = 0, height = 0;
    std::vector<std::uint8_t> mask;

    void build(const std::vector<std::pair<std::int32_t, std::int32_t>>& sites) {
        std::int32_t max_x = sites[0].first, max_y = sites[0].second;
        min_x = sites[0].first;
        min_y = sites[0].second;
        for (const auto& s : sites) {
            min_x = std::min(min_x, s.first);
            max_x = std::max(max_x, s.first);
            min_y = std::min(min_y, s.second);
            max_y = std::max(max_y, s.second);
        }
        width = static_cast<std::int64_t>(max_x) - min_x + 1;
        height = static_cast<std::int64_t>(max_y) - min_y + 1;
        mask.assign(static_cast<std::size_t>(width * height), 0);
        for (std::size_t i = 0; i + 1 < sites.size(); ++i) {
            const auto [x0, y0] = sites[i];
            const auto [x1, y1] = sites[i + 1];
            if (x1 == x0 + 1) {
                at(x0, y0) |= 1;
            } else if (x1 == x0 - 1) {
                at(x1, y1) |= 1;
            } else if (y1 == y0 + 1) {
                at(x0, y0) |= 2;
            } else {
                at(x1, y1) |= 2;
            }
        }
    }

    std::uint8_t& at(std::int32_t x, std::int32_t y) {
        return mask[static_cast<std::size_t>((static_cast<std::int64_t>(x) - min_x) * height +
                                             (static_cast<std::int64_t>(y) - min_y))];
    }

    bool has_edge(std::int32_t x, std::int32_t y, int dir) const {
        // dir: 0 = east, 1 = north, 2 = west, 3 = south
        std::int32_t bx = x, by = y;
        int bit = 0;
        switch (dir) {
            case 0: bit = 1; break;
            case 1: bit = 2; break;
            case 2: bx = x - 1; bit = 1; break;
            default: by = y - 1; bit = 2; break;
        }
        if (bx < min_x || by < min_y || bx - min_x >= width || by - min_y >= height) return false;
        return (mask[static_cast<std::size_t>((static_cast<std::int64_t>(bx) - min_x) * height +
                                              (static_cast<std::int64_t>(by) - min_y))] &
                bit) != 0;
    }
};

inline constexpr std::int32_t kDirDx[4] = {1, 0, -1, 0};
inline constexpr std::int32_t kDirDy[4] = {0, 1, 0, -1};

}  // namespace detail

// Outer boundary loop of the topological hull of a lattice walk: the walk's
// trace together with all bounded components of its complement. A wall
// follower starts at the lexicographically smallest visited site (which has
// no trace to its west or south, so it lies on the outer face) and repeatedly
// takes the most-clockwise available edge, scanning right turn, straight,
// left turn, reverse relative to the incoming direction. Bridge edges appear
// twice in the loop and enclose nothing; the loop's shoelace value equals the
// number of enclosed unit cells.
inline std::vector<std::pair<std::int32_t, std::int32_t>> trace_outer_boundary(
    const LatticePath& walk) {
    const auto& sites = walk.sites;
    if (sites.size() < 2) {
        throw std::invalid_argument("trace_outer_boundary: need at least 2 sites");
    }
    detail::EdgeGrid grid;
    grid.build(sites);

    std::pair<std::int32_t, std::int32_t> start = sites[0];
    for (const auto& s : sites) {
        if (s < start) start = s;
    }
    // The start site only carries east/north edges; east first keeps the
    // exterior on the walker's right.
    const int start_dir = grid.has_edge(start.first, start.second, 0) ? 0 : 1;

    std::vector<std::pair<std::int32_t, std::int32_t>> loop;
    std::int32_t x = start.first, y = start.second;
    int dir = start_dir;
    const std::size_t guard = 8 * sites.size() + 8;
    for (std::size_t step = 0; step < guard; ++step) {
        loop.push_back({x, y});
        x += detail::kDirDx[dir];
        y += detail::kDirDy[dir];
        int next_dir = dir;
        for (int turn = 0; turn < 4; ++turn) {
            const int candidate = (dir + 3 + turn) % 4;  // right, straight, left, back
            if (grid.has_edge(x, y, candidate)) {
                next_dir = candidate;
                break;
            }
        }
        dir = next_dir;
        if (x == start.first && y == start.second && dir == start_dir) {
            return loop;
        }
    }
    throw std::runtime_error("trace_outer_boundary: walker failed to close the loop");
}

// Twice the signed shoelace value of a closed lattice loop.
inline long long lattice_loop_shoelace2(
    const std::vector<std::pair<std::int32_t, std::int32_t>>& loop) {
    long long twice = 0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x0, y0] = loop[i];
        const auto [x1, y1] = loop[(i + 1) % n];
        twice += static_cast<long long>(x0) * y1 - static_cast<long long>(x1) * y0;
    }
    return twice;
}

// Enclosed area of the walk's topological hull in lattice units.
inline double topological_hull_area(const LatticePath& walk) {
    return 0.5 * static_cast<double>(lattice_loop_shoelace2(trace_outer_boundary(walk)));
}

}  // namespace diskhull
