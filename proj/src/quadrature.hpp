#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levyruin/errors.hpp"

namespace levyruin::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tail-weighted integrands decay fast enough for exp-sinh, and relative
// accuracy is what the tail-ratio diagnostics need.
inline constexpr double kRelTol = 1e-13;

/// Integral of f over [a, inf). Throws NumericError when the integral is
/// non-finite or the error estimate says it has not converged.
template <class F>
double integrate_upper(F f, double a, const char* what, double rel_tol = kRelTol) {
    thread_local boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        value = integrator.integrate([&](double t) { return f(a + t); }, rel_tol, &err, &l1);
    } catch (const std::exception& e) {
        throw NumericError(std::string(what) + ": " + e.what());
    }
    if (!std::isfinite(value) || err > 1e-6 * std::max(l1, 1e-300)) {
        throw NumericError(std::string(what) + ": quadrature did not converge");
    }
    return value;
}

/// Integral of f over [a, b] by adaptive Gauss-Kronrod (absolute tolerance 1e-10).
template <class F>
double integrate_finite(F f, double a, double b, double abs_tol = 1e-10) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double value = gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-12, &err);
    if (!std::isfinite(value) || err > std::max(abs_tol, 1e-12 * std::abs(value))) {
        throw NumericError("finite-range quadrature did not converge");
    }
    return value;
}

}  // namespace levyruin::detail
