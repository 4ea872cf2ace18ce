#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sticky/rng.hpp"

namespace sticky {

/// u = (2 + 2 delta) / (2 + delta). Throws DomainError for negative or
/// non-finite delta.
double stickiness_u(double delta);

/// Reinforcement parameter delta and the derived diagonal weight u.
///
/// On the diagonal the walks move together with probability u/2 and split
/// with probability (2 - u)/2. The split weight 2 - u = 2/(2 + delta) is kept
/// separately so it stays accurate when delta is large.
class StickinessParam {
public:
    static StickinessParam from_delta(double delta);
    /// delta = +inf, u = 2: the walks never separate once on the diagonal.
    static StickinessParam fully_sticky();

    double delta() const { return delta_; }
    double u() const { return u_; }
    /// 2 - u.
    double split() const { return split_; }

    double prob_together() const { return u_ / 4.0; }
    double prob_apart() const { return split_ / 4.0; }

private:
    StickinessParam(double delta, double u, double split) : delta_(delta), u_(u), split_(split) {}

    double delta_;
    double u_;
    double split_;
};

struct WalkState {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::uint64_t n = 0;

    bool on_diagonal() const { return x == y; }
    bool operator==(const WalkState&) const = default;
};

/// x and y share the parity of n.
bool satisfies_parity(const WalkState& state);

/// One kernel step driven by a single uniform in [0, 1).
///
/// Off the diagonal each of (x +- 1, y +- 1) gets a quarter of [0, 1). On the
/// diagonal the intervals are, in order, (+1,+1) and (-1,-1) of width u/4,
/// then (+1,-1) and (-1,+1) of width (2-u)/4.
WalkState step(const WalkState& state, const StickinessParam& p, double uniform);

inline WalkState step(const WalkState& state, const StickinessParam& p, CounterRng& rng) {
    return step(state, p, rng.uniform());
}

struct Endpoint {
    std::int64_t x = 0;
    std::int64_t y = 0;
    bool operator==(const Endpoint&) const = default;
};

struct EndpointSample {
    std::vector<Endpoint> pairs;
    std::uint64_t n = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const EndpointSample&) const = default;
};

/// Largest sample simulate_endpoints() will allocate.
inline constexpr std::uint64_t kMaxSamplePaths = std::uint64_t{1} << 24;

/// Endpoints of `paths` independent walks after n steps. Path i draws from
/// CounterRng(seed, n, i), so the sample is identical for any worker count.
/// workers == 0 picks the hardware concurrency. Throws CapacityError when
/// paths exceeds kMaxSamplePaths and DomainError when paths == 0.
EndpointSample simulate_endpoints(const StickinessParam& p, std::uint64_t n, std::uint64_t paths,
                                  std::uint64_t seed, unsigned workers = 0);

/// CSV with header `path_index,x,y`.
void write_endpoints_csv(std::ostream& out, const EndpointSample& sample);
/// Sidecar `{"delta":..,"n":..,"paths":..,"seed":..}`.
std::string endpoints_sidecar_json(const EndpointSample& sample);
/// Inverse of write_endpoints_csv() + endpoints_sidecar_json().
EndpointSample read_endpoints(std::istream& csv, const std::string& sidecar_json);

}  // namespace sticky
