#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

namespace sticky {

using Complex = std::complex<double>;

/// Parameters of the critical occupation profile ell_{alpha,w}.
///
/// gamma = sqrt(alpha^-2 - w^2/4), taking the root with positive imaginary
/// part when the radicand is negative; b1 = -2/alpha + 2 gamma and
/// b2 = -2/alpha - 2 gamma.
struct LimitParams {
    double alpha = 1.0;
    double w = 0.0;
    Complex gamma;
    Complex b1;
    Complex b2;
    bool degenerate = false;
};

/// Relative width of the band |alpha^-2 - w^2/4| <= tol * max(alpha^-2, w^2/4)
/// treated as the degenerate (gamma = 0) case.
inline constexpr double kDegenerateTol = 1e-12;

LimitParams limit_params(double alpha, double w);

/// ell_{alpha,w}(x), x >= 0. Evaluated through erfcx so no factor overflows.
double ell(const LimitParams& params, double x);

struct EllValue {
    double value;
    /// |Im| of the bracket before it is discarded (zero on the real branch).
    double imag_residue;
};
EllValue ell_with_residue(const LimitParams& params, double x);

enum class RegimeKind { subcritical, critical, supercritical };

std::string to_string(RegimeKind kind);
RegimeKind parse_regime_kind(const std::string& text);

/// A sequence delta_n -> infinity: c n^beta (sub: beta < 1/2, super: beta > 1/2)
/// or alpha sqrt(n) (critical).
struct RegimeSpec {
    RegimeKind kind = RegimeKind::critical;
    double alpha = 2.0;
    double scale = 1.0;
    double exponent = 0.5;

    static RegimeSpec subcritical(double scale = 1.0, double exponent = 0.25);
    static RegimeSpec critical(double alpha);
    static RegimeSpec supercritical(double scale = 1.0, double exponent = 1.0);

    /// Throws DomainError when the parameters leave the regime.
    void validate() const;
    double delta_at(std::uint64_t n) const;
};

/// Limit of the Laplace transform of n^-1 sum_k h(0, w n^-1/2, k) delta_{k/n}
/// at lambda (subcritical: of the sqrt(n)/delta_n rescaled measure).
double laplace_target(const RegimeSpec& regime, double w, double lambda);

/// n^-1 H(0, w n^-1/2, exp(-lambda/n)) for the walk with parameter delta.
/// Throws DomainError when lambda/n is below 1e-15.
double laplace_empirical(double delta, std::uint64_t n, double w, double lambda);

/// laplace_empirical() at delta = regime.delta_at(n), multiplied by
/// sqrt(n)/delta_n in the subcritical regime so that it has a finite limit.
double laplace_empirical_scaled(const RegimeSpec& regime, std::uint64_t n, double w,
                                double lambda);

/// Fourier transform of the critical limit law:
/// e^{-(s^2+t^2)/2} [1 - ts int_0^1 e^{(s^2+t^2)x/2} ell_{alpha,s+t}(x) dx].
double phi_critical(double alpha, double s, double t, double tol = 1e-10);

/// Limit characteristic function of n^-1/2 S(n) in the given regime.
double limit_cf(const RegimeSpec& regime, double s, double t, double tol = 1e-10);

/// lim n^-1 E[S1 S2] for delta_n ~ alpha sqrt(n): int_0^1 erfcx(2 sqrt(s)/alpha) ds.
double covariance_limit(double alpha, double tol = 1e-12);

/// int_0^inf e^{-lambda x} f(x) dx, truncated where e^{-lambda x} < 1e-12 and
/// integrated in y = sqrt(x).
double laplace_transform_numeric(const std::function<double(double)>& f, double lambda,
                                 double tol);

/// Densities whose Laplace transforms are the sub- and supercritical targets:
/// e^{-w^2 x/4} / (2 sqrt(pi x)) and e^{-w^2 x/2}.
double subcritical_density(double w, double x);
double supercritical_density(double w, double x);

}  // namespace sticky
