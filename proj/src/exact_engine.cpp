#include "sticky/exact_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sticky/errors.hpp"

namespace sticky {
namespace {

// Imaginary parts of quantities that are real by symmetry must stay below this.
constexpr double kRealnessTol = 1e-12;

void evolve_into(std::span<const Complex> cur, std::span<Complex> next, std::uint64_t n,
                 double u, double split, double half_cos) {
    // cur holds indices 0..n (plus zero padding up to n+2); next receives 0..n+1.
    next[0] = (u * half_cos) * cur[0] + 0.5 * cur[1];
    next[1] = (0.25 * split) * cur[0] + 0.25 * cur[2] + half_cos * cur[1];
    for (std::uint64_t j = 2; j <= n + 1; ++j) {
        next[j] = 0.25 * (cur[j - 1] + cur[j + 1]) + half_cos * cur[j];
    }
}

}  // namespace

DiagFourierState h_init(double t) {
    DiagFourierState state;
    state.t = t;
    state.n = 0;
    state.h = {Complex(1.0, 0.0)};
    return state;
}

DiagFourierState h_evolve(const DiagFourierState& state, double u) {
    if (!(u >= 1.0 && u <= 2.0)) {
        throw DomainError("h_evolve: u must lie in [1, 2]");
    }
    std::vector<Complex> padded(state.n + 3, Complex{});
    std::copy(state.h.begin(), state.h.end(), padded.begin());
    DiagFourierState next;
    next.t = state.t;
    next.n = state.n + 1;
    next.u = u;
    next.h.assign(state.n + 2, Complex{});
    std::vector<Complex> scratch(state.n + 3, Complex{});
    evolve_into(padded, scratch, state.n, u, 2.0 - u, 0.5 * std::cos(state.t));
    std::copy_n(scratch.begin(), state.n + 2, next.h.begin());
    return next;
}

DiagFourierEvolver::DiagFourierEvolver(const StickinessParam& p, double t,
                                       std::uint64_t reserve_steps)
    : t_(t), u_(p.u()), split_(p.split()), half_cos_(0.5 * std::cos(t)) {
    cur_.assign(reserve_steps + 3, Complex{});
    next_.assign(reserve_steps + 3, Complex{});
    cur_[0] = 1.0;
}

void DiagFourierEvolver::advance() {
    if (cur_.size() < n_ + 4) {
        const std::size_t grown = 2 * cur_.size() + 4;
        cur_.resize(grown, Complex{});
        next_.resize(grown, Complex{});
    }
    evolve_into(cur_, next_, n_, u_, split_, half_cos_);
    ++n_;
    std::swap(cur_, next_);
}

DiagFourierState DiagFourierEvolver::snapshot() const {
    DiagFourierState state;
    state.t = t_;
    state.n = n_;
    state.h.assign(cur_.begin(), cur_.begin() + static_cast<std::ptrdiff_t>(n_ + 1));
    if (n_ > 0) {
        state.u = u_;
    }
    return state;
}

std::vector<double> diag_occupation(const StickinessParam& p, std::uint64_t n) {
    std::vector<double> out;
    out.reserve(n + 1);
    DiagFourierEvolver evolver(p, 0.0, n);
    for (std::uint64_t k = 0;; ++k) {
        const Complex h0 = evolver.h0();
        if (std::abs(h0.imag()) > kRealnessTol) {
            throw DomainError("diag_occupation: non-real diagonal term at step " +
                              std::to_string(k));
        }
        out.push_back(h0.real());
        if (k == n) {
            break;
        }
        evolver.advance();
    }
    return out;
}

double coupling_coefficient(const StickinessParam& p, double s, double t,
                            CouplingVariant variant) {
    const double ss = std::sin(s) * std::sin(t);
    switch (variant) {
        case CouplingVariant::kernel_derived:
            return (1.0 - p.u()) * ss;
        case CouplingVariant::paper_prop2:
            return 0.5 * p.u() * (std::cos(t + s) - std::cos(t) * std::cos(s));
    }
    return 0.0;
}

Complex char_fn_exact(const StickinessParam& p, double s, double t, std::uint64_t n,
                      CouplingVariant variant) {
    const double product = std::cos(s) * std::cos(t);
    const double coupling = coupling_coefficient(p, s, t, variant);
    DiagFourierEvolver evolver(p, s + t, n);
    Complex f = 1.0;
    for (std::uint64_t k = 0; k < n; ++k) {
        f = product * f + coupling * evolver.h0();
        evolver.advance();
    }
    return f;
}

double exact_covariance(const StickinessParam& p, std::uint64_t n) {
    if (n == 0) {
        return 0.0;
    }
    const auto occupation = diag_occupation(p, n - 1);
    double sum = 0.0;
    for (double h : occupation) {
        sum += h;
    }
    return (1.0 - p.split()) * sum;
}

Complex GFPoint::at(std::uint64_t j) const {
    if (j == 0) {
        return h0;
    }
    return h1 * std::pow(q2, static_cast<double>(j - 1));
}

GFPoint gf_point(const StickinessParam& p, double t, double z) {
    return gf_point(p, t, z, 1.0 - z);
}

GFPoint gf_point(const StickinessParam& p, double t, double z, double one_minus_z) {
    if (!(z > 0.0 && z < 1.0) || !(one_minus_z > 0.0)) {
        throw DomainError("gf_point: z must lie in (0, 1)");
    }
    const double c = std::cos(t);
    const double half_sin = std::sin(0.5 * t);
    // 1 - z cos t, without cancellation when z -> 1 and t -> 0.
    const double one_minus_zc = one_minus_z + 2.0 * z * half_sin * half_sin;
    const double sin_t = std::sin(t);
    const double radicand = one_minus_zc - 0.25 * z * z * sin_t * sin_t;
    if (radicand < -1e-14) {
        throw DomainError("gf_point: negative square-root argument");
    }
    const double root = std::sqrt(std::max(radicand, 0.0));

    // 1/H0 = 1 - u z cos t / 2 - (2 - u)[1 - z cos t / 2 - root], regrouped as
    // (u - 1)(1 - z cos t) + (2 - u) root.
    const double split = p.split();
    const double inv_h0 = (1.0 - split) * one_minus_zc + split * root;
    const double q1 = (2.0 - z * c + 2.0 * root) / z;

    GFPoint g;
    g.t = t;
    g.z = z;
    g.h0 = 1.0 / inv_h0;
    g.q1 = q1;
    g.q2 = 1.0 / q1;
    // H1 = H0 (2/z - u cos t) - 2/z, which equals (2 - u) q2 H0.
    g.h1 = split * g.q2 * g.h0;
    return g;
}

Complex gf_closed_form(const StickinessParam& p, double t, double z, std::uint64_t j) {
    return gf_point(p, t, z).at(j);
}

Complex gf_series(const StickinessParam& p, double t, double z, std::uint64_t j,
                  std::uint64_t terms) {
    DiagFourierEvolver evolver(p, t, terms);
    Complex sum = 0.0;
    double zn = 1.0;
    for (std::uint64_t k = 0;; ++k) {
        if (j <= k) {
            sum += evolver.values()[j] * zn;
        }
        if (k == terms) {
            break;
        }
        zn *= z;
        evolver.advance();
    }
    return sum;
}

std::uint64_t gf_series_terms_for(double z, double tol) {
    if (!(z >= 0.0 && z < 1.0) || !(tol > 0.0)) {
        throw DomainError("gf_series_terms_for: need 0 <= z < 1 and tol > 0");
    }
    if (z == 0.0) {
        return 0;
    }
    // z^{N+1} / (1 - z) <= tol
    const double needed = std::log(tol * (1.0 - z)) / std::log(z) - 1.0;
    return needed <= 0.0 ? 0 : static_cast<std::uint64_t>(std::ceil(needed));
}

EnumeratedLaw::EnumeratedLaw(const StickinessParam& p, unsigned n)
    : n_(n), width_(2 * static_cast<std::size_t>(n) + 1) {
    if (n > kMaxEnumerationSteps) {
        throw CapacityError("EnumeratedLaw: n = " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxEnumerationSteps) + " (cost 4^n)");
    }
    mass_.assign(width_ * width_, 0.0);
    // Up to ~10^6 paths land in one cell; Neumaier summation keeps the cell
    // totals at full precision.
    std::vector<double> carry(width_ * width_, 0.0);
    const double together = p.prob_together();
    const double apart = p.prob_apart();

    // Depth-first over every step sequence; the weight of each move depends on
    // whether the walk currently sits on the diagonal.
    auto visit = [&](auto&& self, std::int64_t x, std::int64_t y, unsigned depth,
                     double weight) -> void {
        if (weight == 0.0) {
            return;
        }
        if (depth == n_) {
            const std::size_t i = index(x, y);
            const double sum = mass_[i] + weight;
            carry[i] += std::abs(mass_[i]) >= weight ? (mass_[i] - sum) + weight : (weight - sum) + mass_[i];
            mass_[i] = sum;
            return;
        }
        if (x == y) {
            self(self, x + 1, y + 1, depth + 1, weight * together);
            self(self, x - 1, y - 1, depth + 1, weight * together);
            self(self, x + 1, y - 1, depth + 1, weight * apart);
            self(self, x - 1, y + 1, depth + 1, weight * apart);
        } else {
            const double w = 0.25 * weight;
            self(self, x + 1, y + 1, depth + 1, w);
            self(self, x - 1, y - 1, depth + 1, w);
            self(self, x + 1, y - 1, depth + 1, w);
            self(self, x - 1, y + 1, depth + 1, w);
        }
    };
    visit(visit, 0, 0, 0, 1.0);
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        mass_[i] += carry[i];
    }
}

std::size_t EnumeratedLaw::index(std::int64_t x, std::int64_t y) const {
    const auto off = static_cast<std::int64_t>(n_);
    return static_cast<std::size_t>(x + off) * width_ + static_cast<std::size_t>(y + off);
}

double EnumeratedLaw::prob(std::int64_t x, std::int64_t y) const {
    const auto off = static_cast<std::int64_t>(n_);
    if (x < -off || x > off || y < -off || y > off) {
        return 0.0;
    }
    return mass_[index(x, y)];
}

Complex EnumeratedLaw::char_fn(double s, double t) const {
    const auto off = static_cast<std::int64_t>(n_);
    Complex sum = 0.0;
    for (std::int64_t x = -off; x <= off; ++x) {
        for (std::int64_t y = -off; y <= off; ++y) {
            const double m = mass_[index(x, y)];
            if (m != 0.0) {
                sum += m * std::polar(1.0, s * static_cast<double>(x) + t * static_cast<double>(y));
            }
        }
    }
    return sum;
}

Complex EnumeratedLaw::h(std::uint64_t j, double t) const {
    const auto off = static_cast<std::int64_t>(n_);
    const auto jj = static_cast<std::int64_t>(j);
    Complex sum = 0.0;
    // centre a, positions (a - j, a + j)
    for (std::int64_t a = -off - jj; a <= off + jj; ++a) {
        const double m = prob(a - jj, a + jj);
        if (m != 0.0) {
            sum += m * std::polar(1.0, t * static_cast<double>(a));
        }
    }
    return sum;
}

double EnumeratedLaw::covariance() const {
    const auto off = static_cast<std::int64_t>(n_);
    double sum = 0.0;
    for (std::int64_t x = -off; x <= off; ++x) {
        for (std::int64_t y = -off; y <= off; ++y) {
            sum += static_cast<double>(x * y) * mass_[index(x, y)];
        }
    }
    return sum;
}

Complex brute_force_char(const StickinessParam& p, double s, double t, unsigned n) {
    return EnumeratedLaw(p, n).char_fn(s, t);
}

Complex brute_force_h(const StickinessParam& p, std::uint64_t j, double t, unsigned n) {
    return EnumeratedLaw(p, n).h(j, t);
}

}  // namespace sticky
