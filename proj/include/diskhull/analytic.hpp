#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "diskhull/quadrature.hpp"

namespace diskhull {

// Law of the maximal horizontal displacement M of planar Brownian motion at
// the exit time from the unit disk:
//
//   P(M < a) = 2 arcsin(a) / (pi - arccos(a)),  0 < a < 1,
//
// extended by continuity to cdf_M(0) = 0, cdf_M(1) = 1.
inline double cdf_M(double a) {
    if (!(a >= 0.0) || a > 1.0) {
        throw std::domain_error("cdf_M: argument outside [0, 1]");
    }
    if (a == 0.0) return 0.0;
    if (a == 1.0) return 1.0;
    return 2.0 * std::asin(a) / (std::numbers::pi - std::acos(a));
}

inline double survival_M(double a) { return 1.0 - cdf_M(a); }

namespace detail {

// Alternating Taylor series of Si, terms until |term| < 1e-16 (at most 40).
inline double sine_integral_series(double x) {
    double term = x;
    double sum = x;
    const double x2 = x * x;
    for (int k = 0; k < 40 && std::abs(term) >= 1e-16; ++k) {
        const double n = 2.0 * k + 1.0;
        term *= -x2 * n / ((n + 2.0) * (n + 2.0) * (n + 1.0));
        sum += term;
    }
    return sum;
}

}  // namespace detail

// Si(x) = integral of sin(u)/u from 0 to x. Taylor series for |x| <= 4 (the
// only regime the closed forms need); adaptive quadrature in 2-pi chunks past
// the branch point.
inline double sine_integral(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("sine_integral: non-finite argument");
    }
    const double ax = std::abs(x);
    double result;
    if (ax <= 4.0) {
        result = detail::sine_integral_series(ax);
    } else {
        static const double si4 = detail::sine_integral_series(4.0);
        QuadratureSpec spec;
        spec.abs_tol = 1e-13;
        spec.rel_tol = 1e-13;
        const auto integrand = [](double u) { return std::sin(u) / u; };
        double tail = 0.0;
        double lo = 4.0;
        while (lo < ax) {
            const double hi = std::min(ax, lo + 2.0 * std::numbers::pi);
            tail += adaptive_simpson(integrand, lo, hi, spec);
            lo = hi;
        }
        result = si4 + tail;
    }
    return x < 0.0 ? -result : result;
}

enum class ExpectedMMethod {
    Quadrature,    // integral of (1 - 2t/(pi/2 + t)) cos(t) over [0, pi/2]
    SineIntegral,  // pi (Si(pi) - Si(pi/2)) - 1
};

// E[M] ~ 0.511655, by either route; the two representations are required to
// agree within max(abs_tol, 1e-10).
inline double expected_M(ExpectedMMethod method, const QuadratureSpec& spec = {}) {
    spec.validate();
    const double closed_form =
        std::numbers::pi * (sine_integral(std::numbers::pi) - sine_integral(std::numbers::pi / 2.0)) -
        1.0;
    const double by_quadrature = adaptive_simpson(
        [](double t) { return (1.0 - 2.0 * t / (std::numbers::pi / 2.0 + t)) * std::cos(t); },
        0.0, std::numbers::pi / 2.0, spec);
    if (std::abs(closed_form - by_quadrature) > std::max(spec.abs_tol, 1e-10)) {
        throw std::runtime_error("expected_M: quadrature and closed form disagree");
    }
    return method == ExpectedMMethod::Quadrature ? by_quadrature : closed_form;
}

// E[P] = 2 pi E[M] ~ 3.214826.
inline double expected_perimeter(const QuadratureSpec& spec = {}) {
    return 2.0 * std::numbers::pi * expected_M(ExpectedMMethod::SineIntegral, spec);
}

// E[M^2] ~ 0.362777, via the substituted integrand on [0, pi/2],
// cross-checked against 2 * integral of a * P(M >= a).
inline double expected_M_squared(const QuadratureSpec& spec = {}) {
    spec.validate();
    const double primary = adaptive_simpson(
        [](double t) {
            return (1.0 - 2.0 * t / (std::numbers::pi / 2.0 + t)) * std::sin(2.0 * t);
        },
        0.0, std::numbers::pi / 2.0, spec);
    const double by_survival =
        2.0 * adaptive_simpson([](double a) { return a * survival_M(a); }, 0.0, 1.0, spec);
    if (std::abs(primary - by_survival) > std::max(spec.abs_tol * 100.0, 1e-8)) {
        throw std::runtime_error("expected_M_squared: integral forms disagree");
    }
    return primary;
}

// (pi - 8/3, pi E[M^2]): the proven bracket for the expected convex hull area.
inline std::pair<double, double> area_bounds(const QuadratureSpec& spec = {}) {
    return {std::numbers::pi - 8.0 / 3.0, std::numbers::pi * expected_M_squared(spec)};
}

// Law of the radial function at a fixed angle: P(r(0) >= a) = 1 - (4/pi) arctan(sqrt(a)),
// extended by continuity to radial_survival(1) = 0.
inline double radial_survival(double a) {
    if (!(a >= 0.0) || a > 1.0) {
        throw std::domain_error("radial_survival: argument outside [0, 1]");
    }
    if (a == 1.0) return 0.0;
    return 1.0 - 4.0 / std::numbers::pi * std::atan(std::sqrt(a));
}

// Exact expected star-hull area, pi - 8/3.
inline double star_area_exact() { return std::numbers::pi - 8.0 / 3.0; }

// Verification route: 2 pi * integral of a * P(r(0) >= a) over [0, 1].
inline double star_area_by_quadrature(const QuadratureSpec& spec = {}) {
    return 2.0 * std::numbers::pi *
           adaptive_simpson([](double a) { return a * radial_survival(a); }, 0.0, 1.0, spec);
}

struct AnalyticConstants {
    double expected_M = 0.0;
    double expected_perimeter = 0.0;
    double expected_M_squared = 0.0;
    double area_lower_bound = 0.0;
    double area_upper_bound = 0.0;
    double star_area = 0.0;
};

// Computed once at default tolerances; every consumer compares against the
// same values.
inline const AnalyticConstants& analytic_constants() {
    static const AnalyticConstants constants = [] {
        AnalyticConstants c;
        c.expected_M = expected_M(ExpectedMMethod::SineIntegral);
        c.expected_perimeter = 2.0 * std::numbers::pi * c.expected_M;
        c.expected_M_squared = expected_M_squared();
        c.area_lower_bound = std::numbers::pi - 8.0 / 3.0;
        c.area_upper_bound = std::numbers::pi * c.expected_M_squared;
        c.star_area = star_area_exact();
        return c;
    }();
    return constants;
}

}  // namespace diskhull
