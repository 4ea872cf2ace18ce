#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "sticky/errors.hpp"
#include "sticky/param_kernel.hpp"

using namespace sticky;

namespace {

// Wilson-Hilferty approximation of the chi-square quantile.
double chi_square_quantile(double df, double z) {
    const double a = 2.0 / (9.0 * df);
    const double c = 1.0 - a + z * std::sqrt(a);
    return df * c * c * c;
}
constexpr double kZ999 = 3.090232306167813;

double binomial_pmf(int n, int k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                    n * std::log(2.0));
}

// Pearson statistic of the x (or y) marginal against Binomial(n, 1/2) on
// (x + n)/2, pooling tail cells with expectation below 5.
std::pair<double, int> marginal_chi_square(const EndpointSample& sample, bool use_x) {
    const int n = static_cast<int>(sample.n);
    std::vector<double> observed(n + 1, 0.0);
    for (const auto& e : sample.pairs) {
        const auto v = use_x ? e.x : e.y;
        observed[static_cast<std::size_t>((v + n) / 2)] += 1.0;
    }
    const double total = static_cast<double>(sample.pairs.size());
    double stat = 0.0;
    int cells = 0;
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double expected = total * binomial_pmf(n, k);
        pooled_obs += observed[k];
        pooled_exp += expected;
        if (pooled_exp >= 5.0) {
            stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
            ++cells;
            pooled_obs = pooled_exp = 0.0;
        }
    }
    stat += pooled_exp > 0.0 ? (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp : 0.0;
    return {stat, cells - 1};
}

}  // namespace

TEST_CASE("stickiness_u") {
    CHECK(stickiness_u(0.0) == 1.0);
    CHECK(stickiness_u(2.0) == 1.5);
    CHECK(std::abs(stickiness_u(1e12) - 2.0) <= 2e-11);
    CHECK(stickiness_u(1e12) < 2.0);
    double prev = stickiness_u(0.0);
    for (double d = 0.01; d < 1e6; d *= 1.7) {
        const double u = stickiness_u(d);
        CHECK(u > prev);
        CHECK(u < 2.0);
        prev = u;
    }
    CHECK_THROWS_AS(stickiness_u(-1e-9), DomainError);
    CHECK_THROWS_AS(stickiness_u(std::nan("")), DomainError);
    CHECK_THROWS_AS(stickiness_u(INFINITY), DomainError);
}

TEST_CASE("kernel probabilities are a distribution") {
    for (double d : {0.0, 0.3, 1.0, 2.0, 17.0, 1e9}) {
        const auto p = StickinessParam::from_delta(d);
        CHECK(p.prob_together() <= 0.5);
        CHECK(p.prob_apart() >= 0.0);
        CHECK(2 * p.prob_together() + 2 * p.prob_apart() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(p.u() + p.split() == doctest::Approx(2.0).epsilon(1e-15));
    }
    const auto inf = StickinessParam::fully_sticky();
    CHECK(inf.u() == 2.0);
    CHECK(inf.prob_apart() == 0.0);
}

TEST_CASE("step follows the kernel intervals") {
    const auto p = StickinessParam::from_delta(2.0);  // u = 3/2
    const WalkState origin;
    // Diagonal: [0, 3/8) together up, [3/8, 3/4) together down, then apart.
    CHECK(step(origin, p, 0.0) == WalkState{1, 1, 1});
    CHECK(step(origin, p, 0.374) == WalkState{1, 1, 1});
    CHECK(step(origin, p, 0.376) == WalkState{-1, -1, 1});
    CHECK(step(origin, p, 0.76) == WalkState{1, -1, 1});
    CHECK(step(origin, p, 0.9) == WalkState{-1, 1, 1});
    // Off the diagonal: four equal quarters.
    const WalkState off{1, -1, 1};
    CHECK(step(off, p, 0.1) == WalkState{2, 0, 2});
    CHECK(step(off, p, 0.3) == WalkState{2, -2, 2});
    CHECK(step(off, p, 0.6) == WalkState{0, 0, 2});
    CHECK(step(off, p, 0.8) == WalkState{0, -2, 2});
}

TEST_CASE("one-step law from the origin") {
    SUBCASE("delta = 0 is uniform on the four corners") {
        const auto p = StickinessParam::from_delta(0.0);
        std::map<std::pair<long, long>, int> hits;
        for (int i = 0; i < 4; ++i) {
            const auto s = step(WalkState{}, p, 0.125 + 0.25 * i);
            hits[{s.x, s.y}]++;
        }
        CHECK(hits.size() == 4);
    }
    SUBCASE("fully sticky never leaves the diagonal") {
        const auto p = StickinessParam::fully_sticky();
        for (double r = 0.0; r < 1.0; r += 1.0 / 64) {
            CHECK(step(WalkState{}, p, r).on_diagonal());
        }
    }
}

TEST_CASE("simulate_endpoints examples") {
    const auto p = StickinessParam::from_delta(1.0);
    const auto zero = simulate_endpoints(p, 0, 7, 42);
    CHECK(zero.pairs.size() == 7);
    for (const auto& e : zero.pairs) {
        CHECK(e == Endpoint{0, 0});
    }

    const auto stuck = simulate_endpoints(StickinessParam::fully_sticky(), 100, 2000, 5);
    for (const auto& e : stuck.pairs) {
        CHECK(e.x == e.y);
    }

    const auto big = simulate_endpoints(p, 1000, 100000, 11);
    double mean = 0.0;
    for (const auto& e : big.pairs) {
        mean += static_cast<double>(e.x);
    }
    mean /= 1e5;
    CHECK(std::abs(mean) <= 4.0 * std::sqrt(1000.0 / 1e5));

    CHECK_THROWS_AS(simulate_endpoints(p, 10, 0, 1), DomainError);
    CHECK_THROWS_AS(simulate_endpoints(p, 10, kMaxSamplePaths + 1, 1), CapacityError);
}

TEST_CASE("samples obey parity, marginal and exchange laws") {
    for (double d : {0.0, 1.0, 8.0, 200.0}) {
        INFO("delta = " << d);
        const auto p = StickinessParam::from_delta(d);
        const auto sample = simulate_endpoints(p, 25, 100000, 2024);
        for (const auto& e : sample.pairs) {
            REQUIRE(satisfies_parity(WalkState{e.x, e.y, sample.n}));
        }
        for (bool use_x : {true, false}) {
            const auto [stat, df] = marginal_chi_square(sample, use_x);
            CHECK(stat <= chi_square_quantile(df, kZ999));
        }
        // Bowker symmetry test on the joint table.
        std::map<std::pair<long, long>, double> counts;
        for (const auto& e : sample.pairs) {
            counts[{e.x, e.y}] += 1.0;
        }
        double stat = 0.0;
        int df = 0;
        for (const auto& [key, c] : counts) {
            if (key.first < key.second) {
                const auto it = counts.find({key.second, key.first});
                const double other = it == counts.end() ? 0.0 : it->second;
                stat += (c - other) * (c - other) / (c + other);
                ++df;
            }
        }
        for (const auto& [key, c] : counts) {
            if (key.first > key.second && !counts.contains({key.second, key.first})) {
                stat += c;
                ++df;
            }
        }
        CHECK(stat <= chi_square_quantile(df, kZ999));
    }
}

TEST_CASE("simulation is independent of the worker count") {
    const auto p = StickinessParam::from_delta(3.5);
    const auto one = simulate_endpoints(p, 300, 5000, 99, 1);
    CHECK(one == simulate_endpoints(p, 300, 5000, 99, 3));
    CHECK(one == simulate_endpoints(p, 300, 5000, 99, 16));
    CHECK(!(one == simulate_endpoints(p, 300, 5000, 100, 4)));
}

TEST_CASE("endpoint CSV and sidecar round trip") {
    const auto p = StickinessParam::from_delta(0.75);
    const auto sample = simulate_endpoints(p, 31, 257, 8, 2);
    std::ostringstream csv;
    write_endpoints_csv(csv, sample);
    CHECK(csv.str().rfind("path_index,x,y\n0,", 0) == 0);
    const std::string meta = endpoints_sidecar_json(sample);
    CHECK(meta == R"({"delta":0.75,"n":31,"paths":257,"seed":8})");
    std::istringstream in(csv.str());
    CHECK(read_endpoints(in, meta) == sample);

    std::istringstream bad("path_index,x,y\n0,1\n");
    CHECK_THROWS_AS(read_endpoints(bad, R"({"delta":0,"n":1,"paths":1,"seed":0})"), DomainError);
}
