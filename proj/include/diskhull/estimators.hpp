#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "diskhull/analytic.hpp"
#include "diskhull/geometry.hpp"
#include "diskhull/lattice_hull.hpp"
#include "diskhull/sampling.hpp"

namespace diskhull {

struct RunMetadata {
    double dt = 0.0;
    std::uint64_t seed = 0;
    BoundaryMode boundary_mode = BoundaryMode::FirstExterior;
    int m_directions = 0;  // 0 when not applicable
    int kill_radius = 0;   // 0 when not applicable
    int workers = 1;
    std::uint64_t n_requested = 0;
    std::string rng_name = "philox4x32-10";
    std::string gaussian_method = "marsaglia-polar";
    double wall_time_s = 0.0;
};

struct EstimatorResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::pair<double, double> ci95{0.0, 0.0};
    std::uint64_t n_samples = 0;
    std::uint64_t n_capped_excluded = 0;
    RunMetadata metadata;
};

class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PerPathRecord {
    double perimeter = 0.0;
    double convex_area = 0.0;
    double m_sample = 0.0;     // running max of X over all samples
    double y_at_argmax = 0.0;  // Y at the first occurrence of that max
    std::optional<double> star_area;
    double star_quadrature_slack = 0.0;  // (1/2)(2 pi / m) max r^2
    std::uint64_t stream_id = 0;
    bool capped = false;
};

// Deterministic parallel map over stream ids 0..n-1. Records land in a
// preallocated slot per stream, so the output is independent of worker count
// and scheduling; f must be a pure function of the stream id.
template <class Record, class F>
std::vector<Record> map_streams(std::uint64_t n, int workers, F&& f) {
    std::vector<Record> out(n);
    const int w = std::max(1, workers);
    if (w == 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<std::uint64_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    constexpr std::uint64_t kChunk = 16;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&] {
            try {
                for (;;) {
                    const std::uint64_t begin = cursor.fetch_add(kChunk);
                    if (begin >= n) return;
                    const std::uint64_t end = std::min(n, begin + kChunk);
                    for (std::uint64_t i = begin; i < end; ++i) out[i] = f(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

// Neumaier compensated accumulator; order-fixed reductions over it are
// reproducible bit for bit.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

namespace detail {

template <class R, class Proj>
std::pair<double, double> mean_and_variance(std::span<const R> records, Proj&& proj,
                                            std::uint64_t n) {
    CompensatedSum total;
    for (const R& r : records) {
        if (!r.capped) total.add(proj(r));
    }
    const double mean = total.value() / static_cast<double>(n);
    CompensatedSum sq;
    for (const R& r : records) {
        if (!r.capped) {
            const double d = proj(r) - mean;
            sq.add(d * d);
        }
    }
    return {mean, sq.value() / static_cast<double>(n - 1)};
}

template <class R>
std::uint64_t count_usable(std::span<const R> records) {
    std::uint64_t n = 0;
    for (const R& r : records) {
        if (!r.capped) ++n;
    }
    if (n < 2) {
        throw EstimationError("estimator: fewer than two usable (uncapped) samples");
    }
    return n;
}

template <class R, class Proj>
EstimatorResult reduce(std::span<const R> records, Proj&& proj, RunMetadata metadata) {
    const std::uint64_t n = count_usable(records);
    const auto [mean, variance] = mean_and_variance(records, proj, n);
    EstimatorResult result;
    result.mean = mean;
    result.std_error = std::sqrt(variance / static_cast<double>(n));
    result.ci95 = {mean - 1.96 * result.std_error, mean + 1.96 * result.std_error};
    result.n_samples = n;
    result.n_capped_excluded = static_cast<std::uint64_t>(records.size()) - n;
    result.metadata = std::move(metadata);
    return result;
}

class WallClock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// Per-path statistics from an explicit trajectory; the streaming runner below
// produces identical values without storing vertices.
inline PerPathRecord record_from_path(std::span<const Point2> path,
                                      std::optional<int> m_directions = std::nullopt) {
    PerPathRecord rec;
    const ConvexPolygon hull = convex_hull(path);
    rec.perimeter = polygon_perimeter(hull);
    rec.convex_area = polygon_area(hull);
    const DirectionalMax dm = directional_max(0.0, path);
    rec.m_sample = dm.value;
    rec.y_at_argmax = path[dm.argmax].y;
    if (m_directions) {
        const int m = *m_directions;
        const std::vector<double> r = radial_profile(path, m);
        const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(m);
        double riemann = 0.0;
        double max_r2 = 0.0;
        for (double rho : r) {
            riemann += rho * rho;
            max_r2 = std::max(max_r2, rho * rho);
        }
        rec.star_area = 0.5 * dtheta * riemann;
        rec.star_quadrature_slack = 0.5 * dtheta * max_r2;
    }
    return rec;
}

struct PathEnsemble {
    std::vector<PerPathRecord> records;
    RunMetadata metadata;
};

// One streaming pass per path: incremental hull plus running maxima, memory
// O(hull) regardless of path length.
inline PathEnsemble run_hull_ensemble(const SimulationConfig& config, std::uint64_t n_paths,
                                      int workers) {
    config.validate();
    const detail::WallClock clock;
    auto records = map_streams<PerPathRecord>(n_paths, workers, [&config](std::uint64_t stream) {
        PerPathRecord rec;
        rec.stream_id = stream;
        HullAccumulator hull;
        double max_x = -1.0;  // the origin sample makes max_x >= 0 immediately
        double y_at = 0.0;
        const PathEnd end = walk_bm_path(config, stream, [&](Point2 w) {
            hull.add(w);
            if (w.x > max_x) {
                max_x = w.x;
                y_at = w.y;
            }
        });
        const ConvexPolygon& h = hull.finish();
        rec.perimeter = polygon_perimeter(h);
        rec.convex_area = polygon_area(h);
        rec.m_sample = max_x;
        rec.y_at_argmax = y_at;
        rec.capped = end.capped;
        return rec;
    });
    PathEnsemble ensemble{std::move(records), RunMetadata{}};
    ensemble.metadata.dt = config.dt;
    ensemble.metadata.seed = config.master_seed;
    ensemble.metadata.boundary_mode = config.boundary_mode;
    ensemble.metadata.workers = workers;
    ensemble.metadata.n_requested = n_paths;
    ensemble.metadata.wall_time_s = clock.seconds();
    return ensemble;
}

// Full-trace pass per path for the star-hull estimator; optionally also the
// convex hull of the same trajectory for per-path inclusion checks.
inline PathEnsemble run_star_ensemble(const SimulationConfig& config, std::uint64_t n_paths,
                                      int m_directions, bool with_convex_hull, int workers) {
    config.validate();
    if (m_directions < 8) {
        throw std::invalid_argument("run_star_ensemble: need at least 8 directions");
    }
    const detail::WallClock clock;
    auto records = map_streams<PerPathRecord>(
        n_paths, workers, [&config, m_directions, with_convex_hull](std::uint64_t stream) {
            thread_local PolygonalPath path;
            path.clear();
            const PathEnd end =
                walk_bm_path(config, stream, [&](Point2 w) { path.push_back(w); });
            PerPathRecord rec = record_from_path(path, m_directions);
            if (!with_convex_hull) {
                rec.perimeter = 0.0;
                rec.convex_area = 0.0;
            }
            rec.stream_id = stream;
            rec.capped = end.capped;
            return rec;
        });
    PathEnsemble ensemble{std::move(records), RunMetadata{}};
    ensemble.metadata.dt = config.dt;
    ensemble.metadata.seed = config.master_seed;
    ensemble.metadata.boundary_mode = config.boundary_mode;
    ensemble.metadata.m_directions = m_directions;
    ensemble.metadata.workers = workers;
    ensemble.metadata.n_requested = n_paths;
    ensemble.metadata.wall_time_s = clock.seconds();
    return ensemble;
}

inline EstimatorResult perimeter_from(const PathEnsemble& ensemble) {
    return detail::reduce(std::span<const PerPathRecord>(ensemble.records),
                          [](const PerPathRecord& r) { return r.perimeter; }, ensemble.metadata);
}

inline EstimatorResult convex_area_direct_from(const PathEnsemble& ensemble) {
    return detail::reduce(std::span<const PerPathRecord>(ensemble.records),
                          [](const PerPathRecord& r) { return r.convex_area; }, ensemble.metadata);
}

// pi E[M^2] on its own; the upper-bound column of the area bracket.
inline EstimatorResult pi_m_squared_from(const PathEnsemble& ensemble) {
    return detail::reduce(
        std::span<const PerPathRecord>(ensemble.records),
        [](const PerPathRecord& r) { return std::numbers::pi * r.m_sample * r.m_sample; },
        ensemble.metadata);
}

// Blaschke-route area estimate pi(mean M^2 - mean Y_T^2). The standard error
// comes from the joint distribution of the two sample means, covariance
// included.
inline EstimatorResult convex_area_blaschke_from(const PathEnsemble& ensemble) {
    const std::span<const PerPathRecord> records(ensemble.records);
    const std::uint64_t n = detail::count_usable(records);
    CompensatedSum sum_s, sum_t;
    for (const PerPathRecord& r : records) {
        if (r.capped) continue;
        sum_s.add(r.m_sample * r.m_sample);
        sum_t.add(r.y_at_argmax * r.y_at_argmax);
    }
    const double mean_s = sum_s.value() / static_cast<double>(n);
    const double mean_t = sum_t.value() / static_cast<double>(n);
    CompensatedSum var_s, var_t, cov_st;
    for (const PerPathRecord& r : records) {
        if (r.capped) continue;
        const double ds = r.m_sample * r.m_sample - mean_s;
        const double dt = r.y_at_argmax * r.y_at_argmax - mean_t;
        var_s.add(ds * ds);
        var_t.add(dt * dt);
        cov_st.add(ds * dt);
    }
    const double denom = static_cast<double>(n - 1);
    const double variance =
        (var_s.value() + var_t.value() - 2.0 * cov_st.value()) / denom;

    EstimatorResult result;
    result.mean = std::numbers::pi * (mean_s - mean_t);
    result.std_error =
        std::numbers::pi * std::sqrt(std::max(0.0, variance) / static_cast<double>(n));
    result.ci95 = {result.mean - 1.96 * result.std_error, result.mean + 1.96 * result.std_error};
    result.n_samples = n;
    result.n_capped_excluded = static_cast<std::uint64_t>(records.size()) - n;
    result.metadata = ensemble.metadata;
    return result;
}

inline EstimatorResult star_area_from(const PathEnsemble& ensemble) {
    for (const PerPathRecord& r : ensemble.records) {
        if (!r.capped && !r.star_area) {
            throw EstimationError("star_area_from: ensemble lacks star areas");
        }
    }
    return detail::reduce(std::span<const PerPathRecord>(ensemble.records),
                          [](const PerPathRecord& r) { return r.star_area.value_or(0.0); },
                          ensemble.metadata);
}

inline EstimatorResult estimate_perimeter(const SimulationConfig& config, std::uint64_t n_paths,
                                          int workers = 1) {
    if (n_paths < 100) throw std::invalid_argument("estimate_perimeter: need n_paths >= 100");
    return perimeter_from(run_hull_ensemble(config, n_paths, workers));
}

inline EstimatorResult estimate_convex_area_direct(const SimulationConfig& config,
                                                   std::uint64_t n_paths, int workers = 1) {
    if (n_paths < 100) {
        throw std::invalid_argument("estimate_convex_area_direct: need n_paths >= 100");
    }
    return convex_area_direct_from(run_hull_ensemble(config, n_paths, workers));
}

inline EstimatorResult estimate_convex_area_blaschke(const SimulationConfig& config,
                                                     std::uint64_t n_paths, int workers = 1) {
    if (n_paths < 100) {
        throw std::invalid_argument("estimate_convex_area_blaschke: need n_paths >= 100");
    }
    return convex_area_blaschke_from(run_hull_ensemble(config, n_paths, workers));
}

inline EstimatorResult estimate_star_area(const SimulationConfig& config, std::uint64_t n_paths,
                                          int m_directions, int workers = 1) {
    if (n_paths < 100) throw std::invalid_argument("estimate_star_area: need n_paths >= 100");
    return star_area_from(run_star_ensemble(config, n_paths, m_directions, false, workers));
}

// Lattice-walk topological hull areas scaled by kill_radius^-2.
inline EstimatorResult estimate_topological_area(int kill_radius, std::uint64_t n_walks,
                                                 std::uint64_t seed, int workers = 1) {
    if (kill_radius < 10) {
        throw std::invalid_argument("estimate_topological_area: need kill_radius >= 10");
    }
    if (n_walks < 100) {
        throw std::invalid_argument("estimate_topological_area: need n_walks >= 100");
    }
    const detail::WallClock clock;
    struct WalkRecord {
        double scaled_area = 0.0;
        bool capped = false;  // lattice walks always terminate; kept for the shared reducer
    };
    const double scale = 1.0 / (static_cast<double>(kill_radius) * kill_radius);
    auto records =
        map_streams<WalkRecord>(n_walks, workers, [kill_radius, seed, scale](std::uint64_t stream) {
            const LatticePath walk = sample_lattice_walk(kill_radius, seed, stream);
            return WalkRecord{topological_hull_area(walk) * scale, false};
        });
    RunMetadata metadata;
    metadata.seed = seed;
    metadata.kill_radius = kill_radius;
    metadata.workers = workers;
    metadata.n_requested = n_walks;
    metadata.gaussian_method = "n/a";
    metadata.wall_time_s = clock.seconds();
    return detail::reduce(std::span<const WalkRecord>(records),
                          [](const WalkRecord& r) { return r.scaled_area; }, std::move(metadata));
}

struct EmpiricalLawOfM {
    std::vector<double> sorted_samples;  // clipped to [0, 1]
    double ks_distance = 0.0;            // against cdf_M
    double prob_at_least_half = 0.0;     // empirical P(M >= 1/2)
    double prob_std_error = 0.0;
    double mean = 0.0;
    double mean_std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t n_capped_excluded = 0;
    RunMetadata metadata;
};

inline EmpiricalLawOfM law_of_M_from(const PathEnsemble& ensemble) {
    const std::span<const PerPathRecord> records(ensemble.records);
    const std::uint64_t n = detail::count_usable(records);
    EmpiricalLawOfM law;
    law.sorted_samples.reserve(n);
    std::uint64_t at_least_half = 0;
    for (const PerPathRecord& r : records) {
        if (r.capped) continue;
        law.sorted_samples.push_back(std::clamp(r.m_sample, 0.0, 1.0));
        if (r.m_sample >= 0.5) ++at_least_half;
    }
    std::sort(law.sorted_samples.begin(), law.sorted_samples.end());
    const double dn = static_cast<double>(n);
    double ks = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double f = cdf_M(law.sorted_samples[i]);
        ks = std::max(ks, std::max(static_cast<double>(i + 1) / dn - f,
                                   f - static_cast<double>(i) / dn));
    }
    law.ks_distance = ks;
    law.prob_at_least_half = static_cast<double>(at_least_half) / dn;
    law.prob_std_error =
        std::sqrt(law.prob_at_least_half * (1.0 - law.prob_at_least_half) / dn);
    const auto [mean, variance] = detail::mean_and_variance(
        records, [](const PerPathRecord& r) { return std::clamp(r.m_sample, 0.0, 1.0); }, n);
    law.mean = mean;
    law.mean_std_error = std::sqrt(variance / dn);
    law.n_samples = n;
    law.n_capped_excluded = static_cast<std::uint64_t>(records.size()) - n;
    law.metadata = ensemble.metadata;
    return law;
}

inline EmpiricalLawOfM empirical_law_of_M(const SimulationConfig& config, std::uint64_t n_paths,
                                          int workers = 1) {
    if (n_paths < 1000) throw std::invalid_argument("empirical_law_of_M: need n_paths >= 1000");
    return law_of_M_from(run_hull_ensemble(config, n_paths, workers));
}

struct InclusionViolation {
    std::uint64_t stream_id = 0;
    double star_area = 0.0;
    double convex_area = 0.0;
    double slack = 0.0;
};

struct InclusionReport {
    std::uint64_t n_checked = 0;
    std::vector<InclusionViolation> violations;
    double mean_star = 0.0;
    double mean_convex = 0.0;
    bool aggregate_ordered = false;

    bool ok() const { return violations.empty() && aggregate_ordered; }
};

// Per-path star <= convex up to the Riemann-sum slack; the star hull sits
// inside the convex hull, so only quadrature overshoot can break the
// inequality.
inline InclusionReport inclusion_check(std::span<const PerPathRecord> records) {
    InclusionReport report;
    CompensatedSum star_sum, convex_sum;
    for (const PerPathRecord& r : records) {
        if (r.capped || !r.star_area) continue;
        ++report.n_checked;
        star_sum.add(*r.star_area);
        convex_sum.add(r.convex_area);
        if (*r.star_area > r.convex_area + r.star_quadrature_slack) {
            report.violations.push_back(
                {r.stream_id, *r.star_area, r.convex_area, r.star_quadrature_slack});
        }
    }
    if (report.n_checked > 0) {
        report.mean_star = star_sum.value() / static_cast<double>(report.n_checked);
        report.mean_convex = convex_sum.value() / static_cast<double>(report.n_checked);
        report.aggregate_ordered = report.mean_star <= report.mean_convex;
    }
    return report;
}

}  // namespace diskhull
