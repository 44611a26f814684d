#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <system_error>

#include <json.hpp>

#include "diskhull/estimators.hpp"
#include "diskhull/version.hpp"

namespace diskhull {

using Json = nlohmann::json;

// Locale-independent formatting with a fixed number of significant digits
// (dot decimal separator on every platform).
inline std::string format_significant(double x, int digits) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, digits);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_significant: conversion failed");
    }
    return std::string(buf, ptr);
}

// Value rounded to the given number of significant digits; all JSON payloads
// carry 12.
inline double round_significant(double x, int digits) {
    const std::string s = format_significant(x, digits);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    (void)ptr;
    if (ec != std::errc{}) {
        throw std::runtime_error("round_significant: parse-back failed");
    }
    return out;
}

inline Json json_number(double x) { return Json(round_significant(x, 12)); }

// Previously reported Monte Carlo estimates, attached to fresh runs for
// side-by-side display.
struct ReferenceEstimates {
    static constexpr double perimeter_mc = 3.2136;
    static constexpr double convex_area_direct_mc = 0.6612;
    static constexpr double convex_area_blaschke_mc = 0.6618;
    static constexpr double star_area_mc = 0.4725;
    static constexpr double topological_area_mc = 0.2816;
    static constexpr double topological_area_upper = 0.4750;
};

// Strictly numeric outcome payload; run parameters (worker count, wall time)
// stay outside so reruns with different scheduling compare bit-identically.
inline Json estimator_result_to_json(const EstimatorResult& r) {
    Json j;
    j["mean"] = json_number(r.mean);
    j["std_error"] = json_number(r.std_error);
    j["ci95"] = Json::array({json_number(r.ci95.first), json_number(r.ci95.second)});
    j["n_samples"] = r.n_samples;
    j["n_capped_excluded"] = r.n_capped_excluded;
    return j;
}

inline Json metadata_to_json(const RunMetadata& m) {
    Json j;
    if (m.dt > 0.0) {  // Brownian runs only; lattice walks have no dt
        j["dt"] = json_number(m.dt);
        j["boundary_mode"] = to_string(m.boundary_mode);
        j["gaussian"] = m.gaussian_method;
    }
    j["seed"] = m.seed;
    if (m.m_directions > 0) j["m_directions"] = m.m_directions;
    if (m.kill_radius > 0) j["kill_radius"] = m.kill_radius;
    j["workers"] = m.workers;
    j["n_requested"] = m.n_requested;
    j["rng"] = m.rng_name;
    j["wall_time_s"] = json_number(m.wall_time_s);
    return j;
}

inline std::string iso_utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

struct ResultDocument {
    int schema_version = 1;
    std::string timestamp = iso_utc_timestamp();
    std::string command;
    Json parameters = Json::object();
    Json results = Json::object();
    Json reference = Json::object();
    std::string software_version = kVersion;

    Json to_json() const {
        Json j;
        j["schema_version"] = schema_version;
        j["timestamp"] = timestamp;
        j["command"] = command;
        j["parameters"] = parameters;
        j["results"] = results;
        j["reference"] = reference;
        j["software_version"] = software_version;
        return j;
    }

    static ResultDocument from_json(const Json& j) {
        ResultDocument doc;
        doc.schema_version = j.at("schema_version").get<int>();
        doc.timestamp = j.at("timestamp").get<std::string>();
        doc.command = j.at("command").get<std::string>();
        doc.parameters = j.at("parameters");
        doc.results = j.at("results");
        doc.reference = j.at("reference");
        doc.software_version = j.at("software_version").get<std::string>();
        return doc;
    }

    // Deterministic serialization of the numeric outcomes alone.
    std::string results_payload() const { return results.dump(); }
};

}  // namespace diskhull
