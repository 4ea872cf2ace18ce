#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sticky/param_kernel.hpp"

namespace sticky {

using Complex = std::complex<double>;

/// h(j, t, n) = sum_a e^{ita} P(S1(n) = a - j, S2(n) = a + j) for j = 0..n.
struct DiagFourierState {
    double t = 0.0;
    std::uint64_t n = 0;
    std::vector<Complex> h;
    /// Diagonal weight of the kernel that produced the state; unset at n = 0.
    std::optional<double> u;
};

DiagFourierState h_init(double t);

/// One step of the diagonal recursion:
///   h(0)' = (u cos t / 2) h(0) + h(1) / 2
///   h(1)' = ((2 - u) / 4) h(0) + h(2) / 4 + (cos t / 2) h(1)
///   h(j)' = h(j-1) / 4 + h(j+1) / 4 + (cos t / 2) h(j),  j >= 2
DiagFourierState h_evolve(const DiagFourierState& state, double u);

/// In-place rolling form of h_evolve() for long runs; keeps two buffers and
/// grows the support by one index per step.
class DiagFourierEvolver {
public:
    DiagFourierEvolver(const StickinessParam& p, double t, std::uint64_t reserve_steps = 0);

    void advance();
    std::uint64_t steps() const { return n_; }
    std::span<const Complex> values() const { return {cur_.data(), n_ + 1}; }
    Complex h0() const { return cur_[0]; }

    DiagFourierState snapshot() const;

private:
    double t_;
    double u_;
    double split_;
    double half_cos_;
    std::uint64_t n_ = 0;
    std::vector<Complex> cur_;
    std::vector<Complex> next_;
};

/// P(S1(k) = S2(k)) = h(0, 0, k) for k = 0..n.
std::vector<double> diag_occupation(const StickinessParam& p, std::uint64_t n);

enum class CouplingVariant {
    /// (1 - u) sin s sin t, from a one-step analysis of the kernel.
    kernel_derived,
    /// (u / 2)(cos(s + t) - cos s cos t) as printed in the literature.
    paper_prop2,
};

/// f(s, t, n) = E exp(i s S1(n) + i t S2(n)), iterated as
/// f(n+1) = cos s cos t f(n) + c(s, t) h(0, s + t, n).
Complex char_fn_exact(const StickinessParam& p, double s, double t, std::uint64_t n,
                      CouplingVariant variant = CouplingVariant::kernel_derived);

double coupling_coefficient(const StickinessParam& p, double s, double t,
                            CouplingVariant variant);

/// E[S1(n) S2(n)] = (u - 1) sum_{k<n} h(0, 0, k).
double exact_covariance(const StickinessParam& p, std::uint64_t n);

/// Generating functions H(j, t, z) = sum_n h(j, t, n) z^n in closed form.
struct GFPoint {
    double t = 0.0;
    double z = 0.0;
    Complex h0;
    Complex h1;
    double q1 = 0.0;
    double q2 = 0.0;

    /// H(j) = H(1) q2^{j-1} for j >= 1.
    Complex at(std::uint64_t j) const;
};

/// Closed form at (t, z), 0 < z < 1. Throws DomainError otherwise.
GFPoint gf_point(const StickinessParam& p, double t, double z);

/// Same, with 1 - z supplied separately so z within a few ulp of 1 keeps its
/// distance from 1 (used by the Laplace scaling where z = exp(-lambda/n)).
GFPoint gf_point(const StickinessParam& p, double t, double z, double one_minus_z);

Complex gf_closed_form(const StickinessParam& p, double t, double z, std::uint64_t j);

/// sum_{n <= terms} h(j, t, n) z^n; within z^{terms+1}/(1-z) of H(j, t, z).
Complex gf_series(const StickinessParam& p, double t, double z, std::uint64_t j,
                  std::uint64_t terms);

/// Smallest N whose tail bound z^{N+1}/(1-z) is at most tol.
std::uint64_t gf_series_terms_for(double z, double tol);

/// Exact endpoint law by enumeration of all 4^n step sequences. Only meant as
/// an independent check of the recursions; n is capped at kMaxEnumerationSteps.
class EnumeratedLaw {
public:
    EnumeratedLaw(const StickinessParam& p, unsigned n);

    unsigned steps() const { return n_; }
    /// P(S1 = x, S2 = y).
    double prob(std::int64_t x, std::int64_t y) const;
    Complex char_fn(double s, double t) const;
    Complex h(std::uint64_t j, double t) const;
    double covariance() const;

private:
    std::size_t index(std::int64_t x, std::int64_t y) const;

    unsigned n_;
    std::size_t width_;
    std::vector<double> mass_;
};

inline constexpr unsigned kMaxEnumerationSteps = 14;

Complex brute_force_char(const StickinessParam& p, double s, double t, unsigned n);
Complex brute_force_h(const StickinessParam& p, std::uint64_t j, double t, unsigned n);

}  // namespace sticky
