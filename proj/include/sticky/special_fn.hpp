#pragma once

#include <complex>
#include <functional>

namespace sticky {

using Complex = std::complex<double>;

/// Complementary error function on the real line.
double erfc_real(double x);

/// Scaled complementary error function e^{x^2} erfc(x). Finite for all
/// x >= 0; overflows to +inf only for x below about -26.6.
double erfcx_real(double x);

/// e^{z^2} erfc(z) for complex z.
///
/// Evaluated through the Faddeeva function w(z) = e^{-z^2} erfc(-iz), since
/// erfcx(z) = w(iz). In the closed upper half-plane w uses Weideman's
/// 40-term rational expansion for |z| < 12 and the Laplace continued fraction
/// beyond; the lower half-plane follows from w(z) = 2 e^{-z^2} - w(-z).
/// Relative accuracy is about 1e-13 wherever the result is representable.
Complex erfcx_complex(Complex z);

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz).
Complex faddeeva_w(Complex z);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

struct QuadratureOptions {
    double tol = 1e-10;
    /// Integrand behaves like c/sqrt(x - a) (or sqrt(x - a)) at the left
    /// endpoint; integrate in y with x = a + y^2 instead.
    bool singular_sqrt_at_left = false;
    int max_intervals = 4000;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b], global bisection of
/// the interval with largest error estimate. Throws QuadratureError when
/// max_intervals is exhausted before the summed estimate drops below tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options);

/// Integral over [0, 1]; see integrate().
double integrate_01(const std::function<double(double)>& f, bool singular_sqrt_at_zero,
                    double tol);

}  // namespace sticky
