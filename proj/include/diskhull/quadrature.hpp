#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace diskhull {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 60;  // maximum bisection depth

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
            throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        }
        if (max_subdivisions < 1) {
            throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
        }
    }
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& message, double best_estimate)
        : std::runtime_error(message), best_(best_estimate) {}

    double best_estimate() const { return best_; }

private:
    double best_;
};

namespace detail {

template <class F>
struct SimpsonContext {
    const F& f;
    double abs_tol;
    double rel_tol;
    int max_depth;
    bool converged = true;
};

template <class F>
double simpson_recurse(SimpsonContext<F>& ctx, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ctx.f(lm);
    const double frm = ctx.f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const double limit = std::max(tol, ctx.rel_tol * std::abs(left + right));
    if (std::abs(delta) <= 15.0 * limit) {
        return left + right + delta / 15.0;
    }
    if (depth >= ctx.max_depth) {
        ctx.converged = false;
        return left + right + delta / 15.0;
    }
    return simpson_recurse(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_recurse(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson extrapolation. Throws QuadratureError
// carrying the best estimate when some panel fails to converge within the
// subdivision budget.
template <class F>
double adaptive_simpson(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (a == b) return 0.0;
    detail::SimpsonContext<F> ctx{f, spec.abs_tol, spec.rel_tol, spec.max_subdivisions};
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double result =
        detail::simpson_recurse(ctx, a, b, fa, fm, fb, whole, spec.abs_tol, 0);
    if (!ctx.converged) {
        throw QuadratureError("adaptive_simpson: subdivision budget exhausted", result);
    }
    return result;
}

}  // namespace diskhull
