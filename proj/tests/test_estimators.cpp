#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "diskhull/estimators.hpp"
#include "oracles.hpp"

using namespace diskhull;
using std::numbers::pi;

namespace {

SimulationConfig smoke_config(std::uint64_t seed = 555000111) {
    SimulationConfig config;
    config.dt = 1e-3;
    config.master_seed = seed;
    return config;
}

}  // namespace

TEST_CASE("record from synthetic paths", "[estimators]") {
    SECTION("straight segment: degenerate hull conventions") {
        const PolygonalPath path{{0, 0}, {1, 0}};
        const PerPathRecord rec = record_from_path(path, 720);
        CHECK(rec.perimeter == Catch::Approx(2.0));
        CHECK(rec.convex_area == 0.0);
        CHECK(rec.m_sample == Catch::Approx(1.0));
        CHECK(rec.y_at_argmax == 0.0);
        REQUIRE(rec.star_area.has_value());
        CHECK(*rec.star_area <= 0.5 * (2.0 * pi / 720.0) + 1e-15);
    }
    SECTION("sampled unit circle: hull area approaches pi") {
        PolygonalPath circle{{0, 0}};
        for (int k = 0; k < 360; ++k) {
            circle.push_back(unit_vector(2.0 * pi * k / 360.0));
        }
        const PerPathRecord rec = record_from_path(circle);
        CHECK(std::abs(rec.convex_area - pi) < 1e-3);
        CHECK(std::abs(rec.perimeter - 2.0 * pi) < 1e-3);
        CHECK(rec.m_sample == Catch::Approx(1.0));
    }
}

TEST_CASE("streaming records equal whole-path records bitwise", "[estimators]") {
    const SimulationConfig config = smoke_config(42424242);
    const PathEnsemble streamed = run_hull_ensemble(config, 20, 2);
    for (std::uint64_t stream = 0; stream < 20; ++stream) {
        const PathSample sample = sample_bm_until_disk_exit(config, stream);
        const PerPathRecord direct = record_from_path(sample.path);
        const PerPathRecord& rec = streamed.records[stream];
        REQUIRE(rec.perimeter == direct.perimeter);
        REQUIRE(rec.convex_area == direct.convex_area);
        REQUIRE(rec.m_sample == direct.m_sample);
        REQUIRE(rec.y_at_argmax == direct.y_at_argmax);
    }
}

TEST_CASE("per-path maxima match directional_max exactly", "[estimators]") {
    const SimulationConfig config = smoke_config(90909);
    for (std::uint64_t stream = 0; stream < 10; ++stream) {
        const PathSample sample = sample_bm_until_disk_exit(config, stream);
        const DirectionalMax dm = directional_max(0.0, sample.path);
        const PerPathRecord rec = record_from_path(sample.path);
        REQUIRE(rec.m_sample == dm.value);
        REQUIRE(rec.y_at_argmax == sample.path[dm.argmax].y);
    }
}

TEST_CASE("perimeter estimator smoke run", "[estimators][stats]") {
    const EstimatorResult r = estimate_perimeter(smoke_config(), 2000, 2);
    CHECK(r.n_samples == 2000);
    CHECK(r.n_capped_excluded == 0);
    CHECK(std::abs(r.mean - 3.214826) < 0.2);  // coarse dt, coarse tolerance
    CHECK(r.std_error < 0.05);
    CHECK(r.ci95.first == Catch::Approx(r.mean - 1.96 * r.std_error));
    CHECK(r.ci95.second == Catch::Approx(r.mean + 1.96 * r.std_error));
}

TEST_CASE("convex area: direct and Blaschke agree on shared seeds", "[estimators][stats]") {
    const PathEnsemble ensemble = run_hull_ensemble(smoke_config(), 2000, 2);
    const EstimatorResult direct = convex_area_direct_from(ensemble);
    const EstimatorResult blaschke = convex_area_blaschke_from(ensemble);
    const double combined =
        std::sqrt(direct.std_error * direct.std_error + blaschke.std_error * blaschke.std_error);
    CHECK(std::abs(direct.mean - blaschke.mean) < 3.0 * combined);
    // proven analytic bracket with 3-SE margin
    CHECK(direct.mean > 0.4749 + 3.0 * direct.std_error);
    CHECK(direct.mean < 1.1397 - 3.0 * direct.std_error);

    // The Blaschke standard error equals the per-path reduction of
    // pi (M^2 - Y^2) up to floating reassociation.
    struct Simple {
        double value;
        bool capped;
    };
    std::vector<Simple> series;
    for (const auto& rec : ensemble.records) {
        series.push_back({pi * (rec.m_sample * rec.m_sample - rec.y_at_argmax * rec.y_at_argmax),
                          rec.capped});
    }
    CompensatedSum total;
    for (const auto& s : series) total.add(s.value);
    const double mean = total.value() / static_cast<double>(series.size());
    CompensatedSum sq;
    for (const auto& s : series) sq.add((s.value - mean) * (s.value - mean));
    const double se = std::sqrt(sq.value() / (series.size() - 1) / series.size());
    CHECK(blaschke.mean == Catch::Approx(mean).margin(1e-12));
    CHECK(blaschke.std_error == Catch::Approx(se).margin(1e-12));
}

TEST_CASE("empirical law of M smoke run", "[estimators][stats]") {
    const PathEnsemble ensemble = run_hull_ensemble(smoke_config(), 2000, 2);
    const EmpiricalLawOfM law = law_of_M_from(ensemble);
    REQUIRE(law.n_samples == 2000);
    REQUIRE(law.sorted_samples.front() >= 0.0);
    REQUIRE(law.sorted_samples.back() <= 1.0);
    CHECK(law.ks_distance == oracle::ks_distance(law.sorted_samples, [](double a) { return cdf_M(a); }));
    CHECK(law.ks_distance < 0.06);
    CHECK(std::abs(law.prob_at_least_half - 0.5) < 3.0 * law.prob_std_error + 0.02);
    CHECK(std::abs(law.mean - 0.511655) < 3.0 * law.mean_std_error + 0.02);
}

TEST_CASE("star estimator with per-path inclusion", "[estimators][stats]") {
    const PathEnsemble ensemble = run_star_ensemble(smoke_config(), 400, 360, true, 2);
    const EstimatorResult star = star_area_from(ensemble);
    CHECK(star.mean > 0.35);
    CHECK(star.mean < 0.55);

    const InclusionReport report = inclusion_check(ensemble.records);
    CHECK(report.n_checked == 400);
    CHECK(report.violations.empty());
    CHECK(report.aggregate_ordered);
    CHECK(report.mean_star <= report.mean_convex);
}

TEST_CASE("per-path record invariants hold on a large sample", "[estimators][stats]") {
    SimulationConfig config;
    config.dt = 1e-3;
    config.master_seed = 20250101;
    const double allowance = 1.0 + 3.0 * std::sqrt(config.dt);  // discretization overshoot
    const PathEnsemble ensemble = run_hull_ensemble(config, 20000, 2);
    for (const PerPathRecord& rec : ensemble.records) {
        REQUIRE(rec.m_sample >= 0.0);
        REQUIRE(rec.m_sample <= allowance);
        REQUIRE(std::abs(rec.y_at_argmax) <= allowance);
    }
}

TEST_CASE("finer dt moves estimates toward the analytic targets", "[estimators][stats]") {
    SimulationConfig coarse = smoke_config(777111);
    SimulationConfig fine = coarse;

    coarse.dt = 8e-3;
    fine.dt = 1e-3;
    const double per_coarse = estimate_perimeter(coarse, 4000, 2).mean;
    const double per_fine = estimate_perimeter(fine, 4000, 2).mean;
    CHECK(std::abs(per_fine - 3.2148261950649524) < std::abs(per_coarse - 3.2148261950649524));

    coarse.dt = 1e-3;
    fine.dt = 1e-4;
    const double star_target = pi - 8.0 / 3.0;
    const double star_coarse = estimate_star_area(coarse, 2000, 720, 2).mean;
    const double star_fine = estimate_star_area(fine, 2000, 720, 2).mean;
    CHECK(std::abs(star_fine - star_target) < std::abs(star_coarse - star_target));
}

TEST_CASE("inclusion check flags synthetic violations", "[estimators]") {
    std::vector<PerPathRecord> records(3);
    records[0].convex_area = 0.5;
    records[0].star_area = 0.4;
    records[1].convex_area = 0.5;
    records[1].star_area = 0.5004;
    records[1].star_quadrature_slack = 1e-3;  // overshoot within slack
    records[2].convex_area = 0.3;
    records[2].star_area = 0.35;
    records[2].star_quadrature_slack = 1e-3;
    records[2].stream_id = 77;
    const InclusionReport report = inclusion_check(records);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].stream_id == 77);
}

TEST_CASE("topological-area estimator smoke run", "[estimators][stats]") {
    const EstimatorResult r = estimate_topological_area(40, 400, 20260501, 2);
    CHECK(r.n_samples == 400);
    CHECK(r.mean > 0.18);
    CHECK(r.mean < 0.38);
    CHECK(r.mean < 0.4750);
    CHECK(r.metadata.kill_radius == 40);
    CHECK_THROWS_AS(estimate_topological_area(5, 400, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_topological_area(40, 50, 1, 1), std::invalid_argument);
}

TEST_CASE("worker count does not change any estimate", "[estimators]") {
    const SimulationConfig config = smoke_config(31000);
    PathEnsemble baseline = run_hull_ensemble(config, 300, 1);
    for (int workers : {2, 4}) {
        const PathEnsemble other = run_hull_ensemble(config, 300, workers);
        REQUIRE(other.records.size() == baseline.records.size());
        for (std::size_t i = 0; i < baseline.records.size(); ++i) {
            REQUIRE(other.records[i].perimeter == baseline.records[i].perimeter);
            REQUIRE(other.records[i].convex_area == baseline.records[i].convex_area);
            REQUIRE(other.records[i].m_sample == baseline.records[i].m_sample);
            REQUIRE(other.records[i].y_at_argmax == baseline.records[i].y_at_argmax);
        }
        const EstimatorResult a = perimeter_from(baseline);
        const EstimatorResult b = perimeter_from(other);
        REQUIRE(a.mean == b.mean);
        REQUIRE(a.std_error == b.std_error);
    }
}

TEST_CASE("capped paths are excluded and counted", "[estimators]") {
    PathEnsemble ensemble;
    for (int i = 0; i < 5; ++i) {
        PerPathRecord rec;
        rec.perimeter = 3.0 + 0.1 * i;
        rec.capped = (i == 4);
        ensemble.records.push_back(rec);
    }
    const EstimatorResult r = perimeter_from(ensemble);
    CHECK(r.n_samples == 4);
    CHECK(r.n_capped_excluded == 1);
    CHECK(r.mean == Catch::Approx(3.15));

    PathEnsemble all_capped;
    for (int i = 0; i < 3; ++i) {
        PerPathRecord rec;
        rec.capped = true;
        all_capped.records.push_back(rec);
    }
    CHECK_THROWS_AS(perimeter_from(all_capped), EstimationError);
}

TEST_CASE("the step cap produces a flagged sample", "[estimators]") {
    SimulationConfig config;  // deliberately unvalidated: tiny cap
    config.dt = 1e-3;
    config.master_seed = 8;
    config.max_steps = 5;
    std::size_t vertices = 0;
    const PathEnd end = walk_bm_path(config, 0, [&](Point2) { ++vertices; });
    CHECK(end.capped);
    CHECK(end.n_steps == 5);
    CHECK(vertices == 6);
    // estimators reject such configs outright
    CHECK_THROWS_AS(estimate_perimeter(config, 200, 1), std::invalid_argument);
}

TEST_CASE("estimator preconditions", "[estimators]") {
    CHECK_THROWS_AS(estimate_perimeter(smoke_config(), 50, 1), std::invalid_argument);
    CHECK_THROWS_AS(empirical_law_of_M(smoke_config(), 500, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_star_ensemble(smoke_config(), 200, 4, false, 1), std::invalid_argument);
    PathEnsemble hull_only = run_hull_ensemble(smoke_config(), 5, 1);
    CHECK_THROWS_AS(star_area_from(hull_only), EstimationError);
}
