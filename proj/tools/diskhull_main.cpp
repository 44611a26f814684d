// diskhull: analytic values and Monte Carlo estimators for the hulls of
// planar Brownian motion killed at the unit circle.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "diskhull/diskhull.hpp"

namespace {

using namespace diskhull;

struct CliState {
    std::string preset = "desk";
    std::string out_path;
    std::string csv_path;
    std::string log_path;
    std::string boundary = "first-exterior";
    double dt = 0.0;
    std::uint64_t n_paths = 0;
    int m_directions = 0;
    int kill_radius = 0;
    std::uint64_t seed = 123456789;
    int workers = 0;
    double abs_tol = 1e-10;
    int max_subdivisions = 60;
    int grid = 99;
    std::string which;

    CLI::Option* dt_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* m_opt = nullptr;
    CLI::Option* r_opt = nullptr;
};

struct ResolvedParams {
    double dt = 0.0;
    std::uint64_t n = 0;
    int m_directions = 0;
    int kill_radius = 0;
};

// Desk-scale defaults match the documented acceptance parameters; the
// `paper` preset reproduces the published run sizes (not meant for CI).
ResolvedParams resolve(const CliState& s, const std::string& estimator) {
    const bool paper = s.preset == "paper";
    ResolvedParams p;
    if (estimator == "star") {
        p.dt = paper ? 1e-6 : 1e-5;
        p.n = paper ? 100000 : 5000;
        p.m_directions = paper ? 2000 : 720;
    } else if (estimator == "topological") {
        p.kill_radius = paper ? 1000 : 300;
        p.n = paper ? 100000 : 20000;
    } else {  // perimeter, convex area, cdf
        p.dt = paper ? 1e-7 : 1e-5;
        p.n = paper ? 100000 : 20000;
    }
    if (s.dt_opt->count() > 0) p.dt = s.dt;
    if (s.n_opt->count() > 0) p.n = s.n_paths;
    if (s.m_opt->count() > 0) p.m_directions = s.m_directions;
    if (s.r_opt->count() > 0) p.kill_radius = s.kill_radius;
    return p;
}

SimulationConfig make_config(const CliState& s, const ResolvedParams& p) {
    SimulationConfig config;
    config.dt = p.dt;
    config.master_seed = s.seed;
    config.boundary_mode = s.boundary == "circle-interpolated" ? BoundaryMode::CircleInterpolated
                                                               : BoundaryMode::FirstExterior;
    return config;
}

QuadratureSpec make_spec(const CliState& s) {
    QuadratureSpec spec;
    spec.abs_tol = s.abs_tol;
    spec.rel_tol = s.abs_tol;
    spec.max_subdivisions = s.max_subdivisions;
    return spec;
}

int effective_workers(const CliState& s) {
    if (s.workers > 0) return s.workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

Json base_parameters(const CliState& s, int workers) {
    Json j;
    j["preset"] = s.preset;
    j["seed"] = s.seed;
    j["boundary_mode"] = s.boundary;
    j["workers"] = workers;
    j["rng"] = "philox4x32-10";
    j["gaussian"] = "marsaglia-polar";
    return j;
}

// One compact line per estimator run: the full payload, append-friendly.
void append_run_log(const CliState& s, const std::string& quantity, const EstimatorResult& r,
                    const Json& parameters) {
    if (s.log_path.empty()) return;
    Json line;
    line["quantity"] = quantity;
    line["mean"] = json_number(r.mean);
    line["std_error"] = json_number(r.std_error);
    line["ci95"] = Json::array({json_number(r.ci95.first), json_number(r.ci95.second)});
    line["n_samples"] = r.n_samples;
    line["n_capped_excluded"] = r.n_capped_excluded;
    line["parameters"] = parameters;
    line["seed"] = s.seed;
    line["software_version"] = kVersion;
    std::ofstream out(s.log_path, std::ios::app);
    if (!out) {
        throw std::runtime_error("cannot open run log: " + s.log_path);
    }
    out << line.dump() << '\n';
}

void write_document(const ResultDocument& doc, const std::string& out_path) {
    if (out_path.empty()) return;
    std::ofstream out(out_path);
    if (!out) {
        throw std::runtime_error("cannot open output path: " + out_path);
    }
    out << doc.to_json().dump(2) << '\n';
}

void print_estimate(const char* label, const EstimatorResult& r, double reference) {
    std::printf("%-18s %.9g  (SE %.9g, 95%% CI [%.9g, %.9g], n=%llu)  reference %.9g\n", label,
                r.mean, r.std_error, r.ci95.first, r.ci95.second,
                static_cast<unsigned long long>(r.n_samples), reference);
}

int cmd_analytic(const CliState& s) {
    const QuadratureSpec spec = make_spec(s);
    const auto guarded = [](const char* name, auto&& fn) {
        try {
            return fn();
        } catch (const QuadratureError& e) {
            throw std::runtime_error(std::string(name) + " failed to converge: " + e.what() +
                                     " (best estimate " +
                                     format_significant(e.best_estimate(), 12) + ")");
        }
    };
    const double em_si =
        guarded("expected_M (closed form)", [&] { return expected_M(ExpectedMMethod::SineIntegral, spec); });
    const double em_quad =
        guarded("expected_M (quadrature)", [&] { return expected_M(ExpectedMMethod::Quadrature, spec); });
    const double ep = guarded("expected_perimeter", [&] { return expected_perimeter(spec); });
    const double em2 = guarded("expected_M_squared", [&] { return expected_M_squared(spec); });
    const auto bounds = guarded("area_bounds", [&] { return area_bounds(spec); });
    const double star_quad =
        guarded("star_area_by_quadrature", [&] { return star_area_by_quadrature(spec); });
    const double si_pi = sine_integral(std::numbers::pi);
    const double si_half = sine_integral(std::numbers::pi / 2.0);

    double conformal_discrepancy = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double a = static_cast<double>(k) / 101.0;
        conformal_discrepancy =
            std::max(conformal_discrepancy, std::abs(survival_via_conformal(a) - survival_M(a)));
    }

    ResultDocument doc;
    doc.command = "analytic";
    doc.parameters = base_parameters(s, 1);
    doc.parameters["abs_tol"] = json_number(s.abs_tol);
    doc.parameters["max_subdivisions"] = s.max_subdivisions;
    doc.results["expected_M"] = json_number(em_si);
    doc.results["expected_M_quadrature"] = json_number(em_quad);
    doc.results["expected_perimeter"] = json_number(ep);
    doc.results["expected_M_squared"] = json_number(em2);
    doc.results["area_lower_bound"] = json_number(bounds.first);
    doc.results["area_upper_bound"] = json_number(bounds.second);
    doc.results["star_area_exact"] = json_number(star_area_exact());
    doc.results["star_area_quadrature"] = json_number(star_quad);
    doc.results["si_pi"] = json_number(si_pi);
    doc.results["si_half_pi"] = json_number(si_half);
    doc.results["conformal_max_discrepancy"] = json_number(conformal_discrepancy);
    doc.reference["expected_M"] = 0.511655;
    doc.reference["expected_perimeter"] = 3.214826;
    doc.reference["expected_M_squared"] = 0.362777;
    doc.reference["area_lower_bound"] = 0.474925;
    doc.reference["area_upper_bound"] = 1.139699;

    std::printf("expected_M                %.9g\n", em_si);
    std::printf("expected_M (quadrature)   %.9g\n", em_quad);
    std::printf("expected_perimeter        %.9g\n", ep);
    std::printf("expected_M_squared        %.9g\n", em2);
    std::printf("area bounds               [%.9g, %.9g]\n", bounds.first, bounds.second);
    std::printf("star_area_exact           %.12g\n", star_area_exact());
    std::printf("star_area (quadrature)    %.9g\n", star_quad);
    std::printf("Si(pi), Si(pi/2)          %.9g, %.9g\n", si_pi, si_half);
    std::printf("conformal max discrepancy %.3g\n", conformal_discrepancy);

    write_document(doc, s.out_path);
    return conformal_discrepancy < 1e-12 ? 0 : 1;
}

void export_cdf_table(const EmpiricalLawOfM& law, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open CSV path: " + path);
    }
    out << "# diskhull simulate cdf\n";
    out << "# columns: a, empirical_cdf, analytic_cdf\n";
    out << "# n_samples: " << law.n_samples << "\n";
    out << "a,empirical_cdf,analytic_cdf\n";
    const auto& xs = law.sorted_samples;
    for (int k = 1; k <= 99; ++k) {
        const double a = static_cast<double>(k) / 100.0;
        const auto below =
            std::upper_bound(xs.begin(), xs.end(), a) - xs.begin();
        const double empirical = static_cast<double>(below) / static_cast<double>(xs.size());
        out << format_significant(a, 12) << ',' << format_significant(empirical, 12) << ','
            << format_significant(cdf_M(a), 12) << '\n';
    }
}

int cmd_simulate(const CliState& s) {
    const int workers = effective_workers(s);
    ResultDocument doc;
    doc.command = "simulate " + s.which;
    int status = 0;

    if (s.which == "topological-area") {
        const ResolvedParams p = resolve(s, "topological");
        const EstimatorResult r =
            estimate_topological_area(p.kill_radius, p.n, s.seed, workers);
        doc.parameters = base_parameters(s, workers);
        doc.parameters["kill_radius"] = p.kill_radius;
        doc.parameters["n_walks"] = p.n;
        doc.parameters["wall_time_s"] = json_number(r.metadata.wall_time_s);
        doc.results["topological_area"] = estimator_result_to_json(r);
        append_run_log(s, "topological_area", r, doc.parameters);
        doc.reference["reported_mc"] = ReferenceEstimates::topological_area_mc;
        doc.reference["upper_bound"] = ReferenceEstimates::topological_area_upper;
        print_estimate("topological-area", r, ReferenceEstimates::topological_area_mc);
        if (!(r.mean < ReferenceEstimates::topological_area_upper)) {
            std::fprintf(stderr, "bound violation: mean %.9g >= %.4f\n", r.mean,
                         ReferenceEstimates::topological_area_upper);
            status = 1;
        }
        doc.results["upper_bound_ok"] = (status == 0);
    } else if (s.which == "star-area") {
        const ResolvedParams p = resolve(s, "star");
        const SimulationConfig config = make_config(s, p);
        const EstimatorResult r = estimate_star_area(config, p.n, p.m_directions, workers);
        doc.parameters = base_parameters(s, workers);
        doc.parameters["dt"] = json_number(p.dt);
        doc.parameters["n_paths"] = p.n;
        doc.parameters["m_directions"] = p.m_directions;
        doc.parameters["wall_time_s"] = json_number(r.metadata.wall_time_s);
        doc.results["star_area"] = estimator_result_to_json(r);
        append_run_log(s, "star_area", r, doc.parameters);
        doc.reference["reported_mc"] = ReferenceEstimates::star_area_mc;
        doc.reference["exact"] = json_number(star_area_exact());
        print_estimate("star-area", r, ReferenceEstimates::star_area_mc);
    } else {
        const ResolvedParams p = resolve(s, "hull");
        if (s.which == "cdf" && p.n < 1000) {
            throw std::invalid_argument("simulate cdf: need n_paths >= 1000");
        }
        const SimulationConfig config = make_config(s, p);
        const PathEnsemble ensemble = run_hull_ensemble(config, p.n, workers);
        doc.parameters = base_parameters(s, workers);
        doc.parameters["dt"] = json_number(p.dt);
        doc.parameters["n_paths"] = p.n;
        doc.parameters["wall_time_s"] = json_number(ensemble.metadata.wall_time_s);

        if (s.which == "perimeter") {
            const EstimatorResult r = perimeter_from(ensemble);
            doc.results["perimeter"] = estimator_result_to_json(r);
            append_run_log(s, "perimeter", r, doc.parameters);
            doc.reference["reported_mc"] = ReferenceEstimates::perimeter_mc;
            doc.reference["analytic"] = json_number(analytic_constants().expected_perimeter);
            print_estimate("perimeter", r, ReferenceEstimates::perimeter_mc);
        } else if (s.which == "convex-area") {
            const EstimatorResult direct = convex_area_direct_from(ensemble);
            const EstimatorResult blaschke = convex_area_blaschke_from(ensemble);
            const EstimatorResult pim2 = pi_m_squared_from(ensemble);
            doc.results["direct"] = estimator_result_to_json(direct);
            doc.results["blaschke"] = estimator_result_to_json(blaschke);
            doc.results["pi_m_squared"] = estimator_result_to_json(pim2);
            append_run_log(s, "convex_area_direct", direct, doc.parameters);
            append_run_log(s, "convex_area_blaschke", blaschke, doc.parameters);
            doc.reference["reported_mc_direct"] = ReferenceEstimates::convex_area_direct_mc;
            doc.reference["reported_mc_blaschke"] = ReferenceEstimates::convex_area_blaschke_mc;
            doc.reference["lower_bound"] = json_number(analytic_constants().area_lower_bound);
            doc.reference["upper_bound"] = json_number(analytic_constants().area_upper_bound);
            print_estimate("convex-area", direct, ReferenceEstimates::convex_area_direct_mc);
            print_estimate("  blaschke", blaschke, ReferenceEstimates::convex_area_blaschke_mc);
            const bool in_bracket =
                direct.mean > analytic_constants().area_lower_bound + 3.0 * direct.std_error &&
                direct.mean < analytic_constants().area_upper_bound - 3.0 * direct.std_error;
            const double combined = std::sqrt(direct.std_error * direct.std_error +
                                              blaschke.std_error * blaschke.std_error);
            const bool estimators_agree = std::abs(direct.mean - blaschke.mean) < 3.0 * combined;
            doc.results["bracket_ok"] = in_bracket;
            doc.results["estimators_agree"] = estimators_agree;
            if (!in_bracket || !estimators_agree) {
                std::fprintf(stderr, "bracket or agreement violation in convex-area\n");
                status = 1;
            }
        } else {  // cdf
            const EmpiricalLawOfM law = law_of_M_from(ensemble);
            doc.results["ks_distance"] = json_number(law.ks_distance);
            doc.results["prob_m_at_least_half"] = json_number(law.prob_at_least_half);
            doc.results["prob_std_error"] = json_number(law.prob_std_error);
            doc.results["mean_m"] = json_number(law.mean);
            doc.results["mean_std_error"] = json_number(law.mean_std_error);
            doc.results["n_samples"] = law.n_samples;
            doc.results["n_capped_excluded"] = law.n_capped_excluded;
            doc.reference["prob_m_at_least_half"] = 0.5;
            doc.reference["mean_m"] = 0.511655;
            std::printf("cdf: KS distance %.9g, P(M >= 1/2) = %.9g (SE %.9g), mean M = %.9g\n",
                        law.ks_distance, law.prob_at_least_half, law.prob_std_error, law.mean);
            if (!s.csv_path.empty()) export_cdf_table(law, s.csv_path);
        }
    }
    write_document(doc, s.out_path);
    return status;
}

int cmd_table1(const CliState& s) {
    const int workers = effective_workers(s);
    const AnalyticConstants& c = analytic_constants();

    const ResolvedParams hull_p = resolve(s, "hull");
    const SimulationConfig hull_cfg = make_config(s, hull_p);
    const PathEnsemble ensemble = run_hull_ensemble(hull_cfg, hull_p.n, workers);
    const EstimatorResult convex = convex_area_direct_from(ensemble);
    const EstimatorResult blaschke = convex_area_blaschke_from(ensemble);

    const ResolvedParams star_p = resolve(s, "star");
    const SimulationConfig star_cfg = make_config(s, star_p);
    const EstimatorResult star =
        estimate_star_area(star_cfg, star_p.n, star_p.m_directions, workers);

    const ResolvedParams topo_p = resolve(s, "topological");
    const EstimatorResult topo =
        estimate_topological_area(topo_p.kill_radius, topo_p.n, s.seed, workers);

    const bool convex_ok = convex.mean > c.area_lower_bound + 3.0 * convex.std_error &&
                           convex.mean < c.area_upper_bound - 3.0 * convex.std_error;
    const bool topo_ok =
        topo.mean + 3.0 * topo.std_error < ReferenceEstimates::topological_area_upper;
    const bool ordered = topo.mean < star.mean && star.mean < convex.mean;

    std::printf("%-14s %-12s %-12s %-12s %-12s %s\n", "quantity", "lower", "true", "estimate",
                "upper", "source");
    std::printf("%-14s %-12.9g %-12s %-12.9g %-12.9g %s%s\n", "convex", c.area_lower_bound, "?",
                convex.mean, c.area_upper_bound, "proven bracket", convex_ok ? "" : "  [VIOLATION]");
    std::printf("%-14s %-12s %-12.9g %-12.9g %-12s %s\n", "star", "NA", c.star_area, star.mean,
                "NA", "exact value");
    std::printf("%-14s %-12.9g %-12s %-12.9g %-12.9g %s%s\n", "topological", 0.0, "?", topo.mean,
                ReferenceEstimates::topological_area_upper, "inclusion bound",
                topo_ok ? "" : "  [VIOLATION]");
    std::printf("ordering topological < star < convex: %s\n", ordered ? "yes" : "NO  [VIOLATION]");

    ResultDocument doc;
    doc.command = "table1";
    doc.parameters = base_parameters(s, workers);
    doc.parameters["dt"] = json_number(hull_p.dt);
    doc.parameters["n_paths"] = hull_p.n;
    doc.parameters["star_dt"] = json_number(star_p.dt);
    doc.parameters["star_n_paths"] = star_p.n;
    doc.parameters["m_directions"] = star_p.m_directions;
    doc.parameters["kill_radius"] = topo_p.kill_radius;
    doc.parameters["n_walks"] = topo_p.n;
    doc.results["convex_area"] = estimator_result_to_json(convex);
    doc.results["convex_area_blaschke"] = estimator_result_to_json(blaschke);
    doc.results["star_area"] = estimator_result_to_json(star);
    doc.results["topological_area"] = estimator_result_to_json(topo);
    doc.results["area_lower_bound"] = json_number(c.area_lower_bound);
    doc.results["area_upper_bound"] = json_number(c.area_upper_bound);
    doc.results["star_area_exact"] = json_number(c.star_area);
    doc.results["convex_bracket_ok"] = convex_ok;
    doc.results["topological_bound_ok"] = topo_ok;
    doc.results["ordering_ok"] = ordered;
    doc.reference["convex_mc"] = ReferenceEstimates::convex_area_direct_mc;
    doc.reference["star_mc"] = ReferenceEstimates::star_area_mc;
    doc.reference["topological_mc"] = ReferenceEstimates::topological_area_mc;
    write_document(doc, s.out_path);

    return (convex_ok && topo_ok && ordered) ? 0 : 1;
}

int cmd_cdf_export(const CliState& s) {
    if (s.grid < 2) {
        throw std::runtime_error("cdf-export: grid size must be >= 2");
    }
    std::ostringstream out;
    out << "# diskhull cdf-export\n";
    out << "# version: " << kVersion << "\n";
    out << "# grid: " << s.grid << "\n";
    out << "# columns: a, cdf_M, survival_M, survival_conformal, radial_survival\n";
    out << "a,cdf_M,survival_M,survival_conformal,radial_survival\n";
    double worst = 0.0;
    for (int k = 1; k <= s.grid; ++k) {
        const double a = static_cast<double>(k) / (s.grid + 1);
        const double cdf = cdf_M(a);
        const double surv = survival_M(a);
        const double conf = survival_via_conformal(a);
        const double rad = radial_survival(a);
        worst = std::max(worst, std::abs(conf - surv));
        out << format_significant(a, 12) << ',' << format_significant(cdf, 12) << ','
            << format_significant(surv, 12) << ',' << format_significant(conf, 12) << ','
            << format_significant(rad, 12) << '\n';
    }
    if (s.out_path.empty()) {
        std::fputs(out.str().c_str(), stdout);
    } else {
        std::ofstream file(s.out_path);
        if (!file) {
            throw std::runtime_error("cannot open output path: " + s.out_path);
        }
        file << out.str();
    }
    return worst < 1e-12 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CliState s;
    CLI::App app{"hull statistics of planar Brownian motion killed at the unit circle"};
    app.set_version_flag("--version", diskhull::kVersion);
    app.set_config("--config", "", "configuration file (key = value, sections allowed)");
    app.fallthrough();

    s.dt_opt = app.add_option("--dt", s.dt, "time increment of the Euler scheme");
    s.n_opt = app.add_option("--n-paths", s.n_paths, "number of Monte Carlo paths/walks");
    s.m_opt = app.add_option("--m-directions", s.m_directions,
                             "equally spaced ray count for the star hull");
    s.r_opt = app.add_option("--kill-radius", s.kill_radius, "lattice walk stopping radius");
    app.add_option("--seed", s.seed, "master seed for the stream-split RNG");
    app.add_option("--boundary-mode", s.boundary, "first-exterior | circle-interpolated")
        ->check(CLI::IsMember({"first-exterior", "circle-interpolated"}));
    app.add_option("--workers", s.workers, "worker thread count (results do not depend on it)")
        ->envname("DISKHULL_WORKERS");
    app.add_option("--preset", s.preset, "desk | paper parameter preset")
        ->check(CLI::IsMember({"desk", "paper"}));
    app.add_option("--out", s.out_path, "write the JSON result document here");
    app.add_option("--append-log", s.log_path,
                   "append one JSON line per estimator run to this file");
    app.add_option("--abs-tol", s.abs_tol, "quadrature absolute tolerance");
    app.add_option("--max-subdivisions", s.max_subdivisions, "quadrature subdivision depth");

    CLI::App* analytic_cmd = app.add_subcommand("analytic", "closed-form and quadrature values");
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run one Monte Carlo estimator");
    simulate_cmd
        ->add_option("which", s.which,
                     "perimeter | convex-area | star-area | topological-area | cdf")
        ->required()
        ->check(CLI::IsMember(
            {"perimeter", "convex-area", "star-area", "topological-area", "cdf"}));
    simulate_cmd->add_option("--csv", s.csv_path, "CSV export of the empirical CDF (cdf only)");
    CLI::App* table_cmd =
        app.add_subcommand("table1", "all three area estimators next to the analytic bounds");
    CLI::App* export_cmd =
        app.add_subcommand("cdf-export", "tabulate the analytic curves as CSV");
    export_cmd->add_option("--grid", s.grid, "number of interior grid points");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const CLI::Option* config_opt = app.get_config_ptr();
    if (config_opt != nullptr && config_opt->count() > 0) {
        std::fprintf(stderr, "config file applied: %s\n",
                     config_opt->results().front().c_str());
    }

    try {
        if (analytic_cmd->parsed()) return cmd_analytic(s);
        if (simulate_cmd->parsed()) return cmd_simulate(s);
        if (table_cmd->parsed()) return cmd_table1(s);
        if (export_cmd->parsed()) return cmd_cdf_export(s);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
