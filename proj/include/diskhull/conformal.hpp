#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "diskhull/quadrature.hpp"

namespace diskhull {

using Complex = std::complex<double>;

// Value on the Riemann sphere. The chord map sends z_plus to infinity, so map
// composition needs an explicit infinity to match on rather than an IEEE pair.
struct MapPoint {
    Complex value{};
    bool at_infinity = false;

    static MapPoint infinity() { return {Complex{}, true}; }
    static MapPoint finite(Complex z) { return {z, false}; }
};

// Conformal pipeline for the truncated disk D_a = D intersect {Re z < a}:
// the chord map l_a (linear fractional) opens D_a onto a wedge of angle
// beta(a) = pi - arccos(a); the power map w -> w^(pi/beta) opens the wedge
// onto the upper half-plane.
struct TruncatedDiskMap {
    double a;
    double b;      // sqrt(1 - a^2)
    double beta;   // wedge opening angle
    Complex z_plus;
    Complex z_minus;

    explicit TruncatedDiskMap(double chord_abscissa) : a(chord_abscissa) {
        if (!(a > 0.0) || !(a < 1.0)) {
            throw std::domain_error("TruncatedDiskMap: chord abscissa must lie in (0, 1)");
        }
        b = std::sqrt(1.0 - a * a);
        beta = std::numbers::pi - std::acos(a);
        z_plus = Complex{a, b};
        z_minus = Complex{a, -b};
    }
};

// l_a(z) = (z - z_minus) / (z_plus - z); l_a(z_plus) = infinity.
inline MapPoint chord_map(const TruncatedDiskMap& m, Complex z) {
    if (z == m.z_plus) return MapPoint::infinity();
    return MapPoint::finite((z - m.z_minus) / (m.z_plus - z));
}

// Restriction of the chord map to the open chord {a + iy : |y| < b}, which it
// carries onto (0, infinity) as (y + b)/(b - y).
inline double chord_map_on_chord(const TruncatedDiskMap& m, double y) {
    if (!(std::abs(y) < m.b)) {
        throw std::domain_error("chord_map_on_chord: |y| must be below sqrt(1 - a^2)");
    }
    return (y + m.b) / (m.b - y);
}

// Power map w -> w^(pi/beta) on the closed wedge {0 <= arg w <= beta}. The
// branch is fixed by the wedge: arguments are read in [0, 2 pi) and must fall
// in [0, beta] up to a 1e-12 band. 0 maps to 0 by convention.
inline Complex wedge_to_halfplane(const TruncatedDiskMap& m, Complex w) {
    if (w == Complex{}) return Complex{};
    double arg = std::arg(w);
    if (arg < 0.0) arg += 2.0 * std::numbers::pi;
    if (arg > 2.0 * std::numbers::pi - 1e-12) arg = 0.0;  // rounding below the theta=0 ray
    if (arg > m.beta + 1e-12) {
        throw std::domain_error("wedge_to_halfplane: point outside the closed wedge");
    }
    arg = std::min(arg, m.beta);
    const double exponent = std::numbers::pi / m.beta;
    return std::polar(std::pow(std::abs(w), exponent), arg * exponent);
}

// Phi(a) = 2 pi arcsin(a) / (pi - arccos(a)), the argument of f_a(0).
inline double truncated_disk_origin_angle(double a) {
    return 2.0 * std::numbers::pi * std::asin(a) / (std::numbers::pi - std::acos(a));
}

// f_a(0) = e^{i Phi(a)}: the full map has unit modulus at the origin.
inline Complex full_map_of_origin(const TruncatedDiskMap& m) {
    return std::polar(1.0, truncated_disk_origin_angle(m.a));
}

// Harmonic measure in the upper half-plane of the nonnegative real axis seen
// from z: p_plus(z) = 1 - arg(z)/pi.
inline double half_plane_positive_ray_measure(Complex z) {
    if (!(z.imag() > 0.0)) {
        throw std::domain_error("half_plane_positive_ray_measure: point not in the upper half-plane");
    }
    return 1.0 - std::arg(z) / std::numbers::pi;
}

// The same measure by numerical integration of the half-plane Poisson kernel
// over [0, cutoff], plus the analytic tail beyond the cutoff. Cross-check for
// the angle formula, accurate to ~1e-8 at the default cutoff.
inline double half_plane_positive_ray_measure_quadrature(Complex z, double cutoff = 1e6,
                                                         const QuadratureSpec& spec = {}) {
    if (!(z.imag() > 0.0)) {
        throw std::domain_error("half_plane_positive_ray_measure_quadrature: point not in the upper half-plane");
    }
    const double x = z.real();
    const double y = z.imag();
    const auto kernel = [&](double xi) {
        const double dx = x - xi;
        return y / (dx * dx + y * y) / std::numbers::pi;
    };
    double head = 0.0;
    double lo = 0.0;
    double width = 4.0;
    while (lo < cutoff) {  // geometric panels keep the adaptive pass shallow
        const double hi = std::min(cutoff, lo + width);
        head += adaptive_simpson(kernel, lo, hi, spec);
        lo = hi;
        width *= 8.0;
    }
    const double tail =
        (std::numbers::pi / 2.0 - std::atan((cutoff - x) / y)) / std::numbers::pi;
    return head + tail;
}

// P(M >= a) through the conformal pipeline: exit through the chord of D_a has
// the harmonic measure of [0, infinity) in H seen from f_a(0). Must agree
// with 1 - cdf_M(a) to 1e-12; that identity is the module's reason to exist.
inline double survival_via_conformal(double a) {
    const TruncatedDiskMap m(a);
    return half_plane_positive_ray_measure(full_map_of_origin(m));
}

// Disk automorphism m_a(z) = (z - a)/(1 - a z), carrying the slit [a, 1] to
// [0, 1] and the origin to -a. The pole 1/a maps to infinity.
inline MapPoint slit_disk_mobius(double a, Complex z) {
    if (!(a >= 0.0) || !(a < 1.0)) {
        throw std::domain_error("slit_disk_mobius: parameter must lie in [0, 1)");
    }
    const Complex denom = 1.0 - a * z;
    if (denom == Complex{}) return MapPoint::infinity();
    return MapPoint::finite((z - a) / denom);
}

inline Complex reflect(Complex z) { return -z; }

}  // namespace diskhull
