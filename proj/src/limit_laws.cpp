#include "sticky/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sticky/errors.hpp"
#include "sticky/exact_engine.hpp"
#include "sticky/special_fn.hpp"

namespace sticky {
namespace {

constexpr double kResidueTol = 1e-8;

}  // namespace

LimitParams limit_params(double alpha, double w) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("limit_params: alpha must be positive");
    }
    LimitParams p;
    p.alpha = alpha;
    p.w = w;
    const double inv_a2 = 1.0 / (alpha * alpha);
    const double quarter_w2 = 0.25 * w * w;
    const double radicand = inv_a2 - quarter_w2;
    p.degenerate = std::abs(radicand) <= kDegenerateTol * std::max(inv_a2, quarter_w2);
    if (p.degenerate) {
        p.gamma = 0.0;
    } else if (radicand > 0.0) {
        p.gamma = std::sqrt(radicand);
    } else {
        p.gamma = Complex(0.0, std::sqrt(-radicand));
    }
    p.b1 = -2.0 / alpha + 2.0 * p.gamma;
    p.b2 = -2.0 / alpha - 2.0 * p.gamma;
    return p;
}

EllValue ell_with_residue(const LimitParams& params, double x) {
    if (!(x >= 0.0)) {
        throw DomainError("ell: x must be nonnegative");
    }
    const double root_x = std::sqrt(x);
    const double damping = std::exp(-0.25 * params.w * params.w * x);

    if (params.degenerate) {
        const double a = params.alpha;
        const double bracket = -4.0 * root_x / (a * std::sqrt(std::numbers::pi)) +
                               (4.0 * x / (a * a) + 2.0) * erfcx_real(root_x / a);
        return {0.5 * damping * bracket, 0.0};
    }

    if (params.gamma.imag() == 0.0) {
        const double g = params.gamma.real();
        const double b1 = params.b1.real();
        const double b2 = params.b2.real();
        const double term1 = 0.5 * b1 * erfcx_real(-0.5 * b1 * root_x);
        const double term2 = 0.5 * b2 * erfcx_real(-0.5 * b2 * root_x);
        return {damping * (term1 - term2) / (2.0 * g), 0.0};
    }

    const Complex term1 = 0.5 * params.b1 * erfcx_complex(-0.5 * params.b1 * root_x);
    const Complex term2 = 0.5 * params.b2 * erfcx_complex(-0.5 * params.b2 * root_x);
    const Complex value = damping * (term1 - term2) / (2.0 * params.gamma);
    return {value.real(), std::abs(value.imag())};
}

double ell(const LimitParams& params, double x) {
    const EllValue v = ell_with_residue(params, x);
    if (v.imag_residue > kResidueTol * std::max(1.0, std::abs(v.value))) {
        throw DomainError("ell: conjugate terms failed to cancel (residue " +
                          std::to_string(v.imag_residue) + ")");
    }
    return v.value;
}

std::string to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::subcritical:
            return "sub";
        case RegimeKind::critical:
            return "critical";
        case RegimeKind::supercritical:
            return "super";
    }
    return "?";
}

RegimeKind parse_regime_kind(const std::string& text) {
    if (text == "sub" || text == "subcritical") {
        return RegimeKind::subcritical;
    }
    if (text == "critical") {
        return RegimeKind::critical;
    }
    if (text == "super" || text == "supercritical") {
        return RegimeKind::supercritical;
    }
    throw DomainError("unknown regime '" + text + "' (expected sub, critical or super)");
}

RegimeSpec RegimeSpec::subcritical(double scale, double exponent) {
    RegimeSpec r;
    r.kind = RegimeKind::subcritical;
    r.scale = scale;
    r.exponent = exponent;
    r.validate();
    return r;
}

RegimeSpec RegimeSpec::critical(double alpha) {
    RegimeSpec r;
    r.kind = RegimeKind::critical;
    r.alpha = alpha;
    r.validate();
    return r;
}

RegimeSpec RegimeSpec::supercritical(double scale, double exponent) {
    RegimeSpec r;
    r.kind = RegimeKind::supercritical;
    r.scale = scale;
    r.exponent = exponent;
    r.validate();
    return r;
}

void RegimeSpec::validate() const {
    switch (kind) {
        case RegimeKind::subcritical:
            if (!(scale > 0.0) || !(exponent > 0.0 && exponent < 0.5)) {
                throw DomainError("subcritical regime needs scale > 0 and 0 < exponent < 1/2");
            }
            break;
        case RegimeKind::critical:
            if (!(alpha > 0.0) || !std::isfinite(alpha)) {
                throw DomainError("critical regime needs alpha > 0");
            }
            break;
        case RegimeKind::supercritical:
            if (!(scale > 0.0) || !(exponent > 0.5) || !std::isfinite(exponent)) {
                throw DomainError("supercritical regime needs scale > 0 and exponent > 1/2");
            }
            break;
    }
}

double RegimeSpec::delta_at(std::uint64_t n) const {
    const auto dn = static_cast<double>(n);
    if (kind == RegimeKind::critical) {
        return alpha * std::sqrt(dn);
    }
    return scale * std::pow(dn, exponent);
}

double laplace_target(const RegimeSpec& regime, double w, double lambda) {
    if (!(lambda > 0.0)) {
        throw DomainError("laplace_target: lambda must be positive");
    }
    const double root = std::sqrt(4.0 * lambda + w * w);
    switch (regime.kind) {
        case RegimeKind::subcritical:
            return 1.0 / root;
        case RegimeKind::critical:
            return 1.0 / (0.5 * w * w + lambda + root / regime.alpha);
        case RegimeKind::supercritical:
            return 1.0 / (0.5 * w * w + lambda);
    }
    return 0.0;
}

double laplace_empirical(double delta, std::uint64_t n, double w, double lambda) {
    if (n == 0) {
        throw DomainError("laplace_empirical: n must be at least 1");
    }
    if (!(lambda > 0.0)) {
        throw DomainError("laplace_empirical: lambda must be positive");
    }
    const auto dn = static_cast<double>(n);
    const double rate = lambda / dn;
    if (rate < 1e-15) {
        throw DomainError("laplace_empirical: exp(-lambda/n) rounds to 1");
    }
    const auto p = StickinessParam::from_delta(delta);
    const GFPoint g = gf_point(p, w / std::sqrt(dn), std::exp(-rate), -std::expm1(-rate));
    return g.h0.real() / dn;
}

double laplace_empirical_scaled(const RegimeSpec& regime, std::uint64_t n, double w,
                                double lambda) {
    regime.validate();
    const double delta = regime.delta_at(n);
    const double value = laplace_empirical(delta, n, w, lambda);
    if (regime.kind == RegimeKind::subcritical) {
        return value * std::sqrt(static_cast<double>(n)) / delta;
    }
    return value;
}

double phi_critical(double alpha, double s, double t, double tol) {
    const double energy = 0.5 * (s * s + t * t);
    const double gauss = std::exp(-energy);
    if (t * s == 0.0) {
        return gauss;
    }
    const LimitParams params = limit_params(alpha, s + t);
    const double integral = integrate_01(
        [&](double x) { return std::exp(energy * x) * ell(params, x); }, false, tol);
    return gauss * (1.0 - t * s * integral);
}

double limit_cf(const RegimeSpec& regime, double s, double t, double tol) {
    switch (regime.kind) {
        case RegimeKind::subcritical:
            return std::exp(-0.5 * (s * s + t * t));
        case RegimeKind::critical:
            return phi_critical(regime.alpha, s, t, tol);
        case RegimeKind::supercritical:
            return std::exp(-0.5 * (s + t) * (s + t));
    }
    return 0.0;
}

double covariance_limit(double alpha, double tol) {
    if (!(alpha > 0.0)) {
        throw DomainError("covariance_limit: alpha must be positive");
    }
    return integrate_01([alpha](double s) { return erfcx_real(2.0 * std::sqrt(s) / alpha); },
                        true, tol);
}

double laplace_transform_numeric(const std::function<double(double)>& f, double lambda,
                                 double tol) {
    if (!(lambda > 0.0)) {
        throw DomainError("laplace_transform_numeric: lambda must be positive");
    }
    const double cutoff = std::log(1e12) / lambda;
    QuadratureOptions options;
    options.tol = tol;
    options.singular_sqrt_at_left = true;
    return integrate([&](double x) { return std::exp(-lambda * x) * f(x); }, 0.0, cutoff, options)
        .value;
}

double subcritical_density(double w, double x) {
    return 0.5 * std::exp(-0.25 * w * w * x) / std::sqrt(std::numbers::pi * x);
}

double supercritical_density(double w, double x) { return std::exp(-0.5 * w * w * x); }

}  // namespace sticky
