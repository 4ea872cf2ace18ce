#include <cmath>
#include <vector>

#include "doctest.h"
#include "sticky/errors.hpp"
#include "sticky/exact_engine.hpp"
#include "sticky/limit_laws.hpp"

using namespace sticky;

TEST_CASE("limit_params") {
    {
        const auto p = limit_params(2.0, 0.0);
        CHECK(p.gamma == Complex(0.5, 0.0));
        CHECK(p.b1 == Complex(0.0, 0.0));
        CHECK(p.b2 == Complex(-2.0, 0.0));
        CHECK(!p.degenerate);
    }
    CHECK(limit_params(1.0, 2.0).degenerate);
    CHECK(limit_params(0.5, 4.0).degenerate);
    CHECK(!limit_params(1.0, 2.0 + 1e-6).degenerate);
    {
        const auto p = limit_params(1.0, 4.0);
        CHECK(std::abs(p.gamma - Complex(0.0, std::sqrt(3.0))) <= 1e-15);
        CHECK(std::abs(p.b1 - Complex(-2.0, 2.0 * std::sqrt(3.0))) <= 1e-15);
    }
    for (double alpha : {0.3, 1.0, 2.5}) {
        for (double w : {0.0, 0.7, 1.9, 3.3, -5.0}) {
            const auto p = limit_params(alpha, w);
            CHECK(std::abs(p.b1 + p.b2 - (-4.0 / alpha)) <= 1e-12);
            CHECK(std::abs(p.b1 - p.b2 - 4.0 * p.gamma) <= 1e-12);
            if (1.0 / (alpha * alpha) < w * w / 4) {
                CHECK(p.gamma.imag() > 0.0);
                CHECK(p.gamma.real() == 0.0);
            } else if (!p.degenerate) {
                CHECK(p.gamma.real() > 0.0);
            }
        }
    }
    CHECK_THROWS_AS(limit_params(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(limit_params(-1.0, 1.0), DomainError);
}

TEST_CASE("ell at the origin and realness") {
    for (double alpha : {0.25, 0.5, 1.0, 2.0, 8.0}) {
        for (double w : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 2.0 / alpha}) {
            const auto p = limit_params(alpha, w);
            CHECK(std::abs(ell(p, 0.0) - 1.0) <= 1e-8);
            for (double x : {1e-6, 0.01, 0.3, 1.0, 5.0, 40.0}) {
                const auto v = ell_with_residue(p, x);
                CHECK(v.imag_residue <= 1e-8);
                CHECK(std::isfinite(v.value));
            }
        }
    }
    CHECK_THROWS_AS(ell(limit_params(1.0, 1.0), -0.1), DomainError);
}

TEST_CASE("ell is continuous across the degenerate seam") {
    const auto seam = limit_params(1.0, 2.0);
    REQUIRE(seam.degenerate);
    for (double x : {0.05, 0.5, 1.0, 3.0}) {
        const double mid = ell(seam, x);
        CHECK(std::abs(ell(limit_params(1.0, 2.0 + 1e-6), x) - mid) <= 1e-4);
        CHECK(std::abs(ell(limit_params(1.0, 2.0 - 1e-6), x) - mid) <= 1e-4);
    }
}

TEST_CASE("Laplace transform of ell is the critical target") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double w : {0.0, 1.0, 2.0, 3.0}) {
            const auto p = limit_params(alpha, w);
            for (double lambda : {0.5, 1.0, 2.0}) {
                const double numeric =
                    laplace_transform_numeric([&](double x) { return ell(p, x); }, lambda, 1e-10);
                const double target = laplace_target(RegimeSpec::critical(alpha), w, lambda);
                INFO("alpha=" << alpha << " w=" << w << " lambda=" << lambda);
                CHECK(std::abs(numeric - target) <= 1e-6);
            }
        }
    }
}

TEST_CASE("sub- and supercritical densities") {
    for (double w : {0.0, 1.0, 2.0}) {
        for (double lambda : {0.5, 1.0, 2.0}) {
            const double sub = laplace_transform_numeric(
                [w](double x) { return subcritical_density(w, x); }, lambda, 1e-11);
            CHECK(std::abs(sub - laplace_target(RegimeSpec::subcritical(), w, lambda)) <= 1e-8);
            const double super = laplace_transform_numeric(
                [w](double x) { return supercritical_density(w, x); }, lambda, 1e-11);
            CHECK(std::abs(super - laplace_target(RegimeSpec::supercritical(), w, lambda)) <= 1e-8);

            // Without the factor 1/2 the transform is 2/sqrt(4 lambda + w^2).
            const double doubled = laplace_transform_numeric(
                [w](double x) { return 2.0 * subcritical_density(w, x); }, lambda, 1e-11);
            CHECK(std::abs(doubled - 2.0 / std::sqrt(4 * lambda + w * w)) <= 1e-8);
        }
    }
}

TEST_CASE("laplace_target") {
    CHECK(laplace_target(RegimeSpec::supercritical(), 0.0, 1.0) == 1.0);
    CHECK(laplace_target(RegimeSpec::subcritical(), 0.0, 1.0) == 0.5);
    for (double alpha : {10.0, 100.0, 1000.0}) {
        const double diff = std::abs(laplace_target(RegimeSpec::critical(alpha), 1.0, 1.0) -
                                     laplace_target(RegimeSpec::supercritical(), 1.0, 1.0));
        CHECK(diff <= 3.0 / alpha);
    }
    CHECK_THROWS_AS(laplace_target(RegimeSpec::critical(1.0), 0.0, 0.0), DomainError);
}

TEST_CASE("RegimeSpec") {
    CHECK(RegimeSpec::critical(2.0).delta_at(100) == 20.0);
    CHECK(RegimeSpec::subcritical().delta_at(10000) == doctest::Approx(10.0));
    CHECK(RegimeSpec::supercritical().delta_at(77) == 77.0);
    CHECK_THROWS_AS(RegimeSpec::subcritical(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(RegimeSpec::supercritical(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(RegimeSpec::critical(0.0), DomainError);
    CHECK(parse_regime_kind("sub") == RegimeKind::subcritical);
    CHECK(parse_regime_kind(to_string(RegimeKind::supercritical)) == RegimeKind::supercritical);
    CHECK_THROWS_AS(parse_regime_kind("hyper"), DomainError);
}

TEST_CASE("laplace_empirical") {
    // Fully sticky limit, w = 0: n^-1 / (1 - e^{-lambda/n}).
    for (std::uint64_t n : {10u, 1000u, 100000u}) {
        const double lambda = 0.8;
        const double dn = static_cast<double>(n);
        const double want = 1.0 / (dn * -std::expm1(-lambda / dn));
        CHECK(std::abs(laplace_empirical(1e12, n, 0.0, lambda) - want) <= 1e-9 * want);
    }
    const auto crit = RegimeSpec::critical(2.0);
    CHECK(std::abs(laplace_empirical_scaled(crit, 100000000, 1.0, 1.0) - laplace_target(crit, 1.0, 1.0)) <=
          1e-3);
    const auto sub = RegimeSpec::subcritical();
    CHECK(std::abs(laplace_empirical_scaled(sub, 100000000, 1.0, 1.0) - laplace_target(sub, 1.0, 1.0)) <=
          1e-2);

    // Against the truncated series at moderate n.
    const std::uint64_t n = 400;
    const double z = std::exp(-1.0 / n);
    const auto p = StickinessParam::from_delta(2.0 * std::sqrt(400.0));
    const std::uint64_t terms = gf_series_terms_for(z, 1e-12);
    const double series = gf_series(p, 1.0 / std::sqrt(400.0), z, 0, terms).real() / n;
    CHECK(std::abs(laplace_empirical(p.delta(), n, 1.0, 1.0) - series) <= 1e-10);

    CHECK_THROWS_AS(laplace_empirical(1.0, 0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(laplace_empirical(1.0, 1000000000, 1.0, 1e-7), DomainError);
}

TEST_CASE("phi_critical") {
    for (double s : {-2.0, 0.3, 1.5}) {
        CHECK(phi_critical(1.0, s, 0.0) == std::exp(-s * s / 2));
        CHECK(phi_critical(1.0, 0.0, s) == std::exp(-s * s / 2));
    }
    CHECK(phi_critical(2.0, 0.0, 0.0) == 1.0);
    const std::vector<double> g = {-2, -1, -0.5, 0.5, 1, 2};
    for (double alpha : {0.5, 2.0}) {
        for (double s : g) {
            for (double t : g) {
                const double v = phi_critical(alpha, s, t);
                CHECK(std::abs(v) <= 1.0);
                CHECK(std::abs(v - phi_critical(alpha, t, s)) <= 1e-10);
            }
        }
    }
    const std::uint64_t n = 4096;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const auto p = StickinessParam::from_delta(2.0 * std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(char_fn_exact(p, scale, scale, n).real() - phi_critical(2.0, 1.0, 1.0)) <= 1e-3);
}

TEST_CASE("limit_cf") {
    CHECK(limit_cf(RegimeSpec::subcritical(), 0.0, 0.0) == 1.0);
    CHECK(limit_cf(RegimeSpec::supercritical(), 1.0, -1.0) == 1.0);
    CHECK(limit_cf(RegimeSpec::supercritical(), 1.0, 1.0) == std::exp(-2.0));

    // The critical law tends to the subcritical one as alpha -> 0; the sup
    // deviation on |s|, |t| <= 2 is about 0.018 at alpha = 0.05.
    double prev = INFINITY;
    for (double alpha : {0.2, 0.1, 0.05, 0.02, 0.01}) {
        const auto regime = RegimeSpec::critical(alpha);
        double worst = 0.0;
        for (double s = -2.0; s <= 2.0; s += 0.5) {
            for (double t = -2.0; t <= 2.0; t += 0.5) {
                worst = std::max(worst, std::abs(limit_cf(regime, s, t) -
                                                 limit_cf(RegimeSpec::subcritical(), s, t)));
            }
        }
        CHECK(worst < prev);
        if (alpha <= 0.02) {
            CHECK(worst <= 1e-2);
        }
        if (alpha == 0.05) {
            CHECK(worst <= 2e-2);
        }
        prev = worst;
    }
}

TEST_CASE("covariance_limit") {
    CHECK(std::abs(covariance_limit(1e3) - 1.0) <= 1e-2);
    CHECK(covariance_limit(1e-3) <= 1e-2);
    double prev = 0.0;
    for (double alpha : {0.1, 0.5, 1.0, 2.0, 8.0, 50.0}) {
        const double c = covariance_limit(alpha);
        CHECK(c > prev);
        CHECK(c < 1.0);
        prev = c;
    }
    const std::uint64_t n = 10000;
    const auto p = StickinessParam::from_delta(2.0 * std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(exact_covariance(p, n) / n - covariance_limit(2.0)) <= 2e-2);
}

TEST_CASE("mixed derivative of phi at the origin is minus the covariance") {
    const double h = 1e-3;
    for (double alpha : {0.5, 1.0, 2.0, 8.0}) {
        const auto phi = [alpha](double s, double t) { return phi_critical(alpha, s, t, 1e-13); };
        const double mixed = (phi(h, h) - phi(h, -h) - phi(-h, h) + phi(-h, -h)) / (4 * h * h);
        CHECK(std::abs(mixed + covariance_limit(alpha)) <= 1e-4);
    }
}
