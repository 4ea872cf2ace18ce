#include "sticky/param_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "sticky/errors.hpp"

namespace sticky {

double stickiness_u(double delta) {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw DomainError("stickiness_u: delta must be finite and nonnegative");
    }
    return (2.0 + 2.0 * delta) / (2.0 + delta);
}

StickinessParam StickinessParam::from_delta(double delta) {
    const double u = stickiness_u(delta);
    return StickinessParam(delta, u, 2.0 / (2.0 + delta));
}

StickinessParam StickinessParam::fully_sticky() {
    return StickinessParam(std::numeric_limits<double>::infinity(), 2.0, 0.0);
}

bool satisfies_parity(const WalkState& state) {
    const auto parity = [](std::int64_t v) { return v & 1; };
    const std::int64_t n_parity = static_cast<std::int64_t>(state.n & 1U);
    return parity(state.x) == n_parity && parity(state.y) == n_parity;
}

WalkState step(const WalkState& state, const StickinessParam& p, double uniform) {
    WalkState next = state;
    ++next.n;
    if (!state.on_diagonal()) {
        next.x += uniform < 0.5 ? 1 : -1;
        next.y += (uniform < 0.25 || (uniform >= 0.5 && uniform < 0.75)) ? 1 : -1;
        return next;
    }
    const double together = p.prob_together();
    if (uniform < together) {
        next.x += 1;
        next.y += 1;
    } else if (uniform < 2.0 * together) {
        next.x -= 1;
        next.y -= 1;
    } else if (uniform < 2.0 * together + p.prob_apart()) {
        next.x += 1;
        next.y -= 1;
    } else {
        next.x -= 1;
        next.y += 1;
    }
    return next;
}

EndpointSample simulate_endpoints(const StickinessParam& p, std::uint64_t n, std::uint64_t paths,
                                  std::uint64_t seed, unsigned workers) {
    if (paths == 0) {
        throw DomainError("simulate_endpoints: paths must be at least 1");
    }
    if (paths > kMaxSamplePaths) {
        throw CapacityError("simulate_endpoints: " + std::to_string(paths) +
                            " paths exceeds the limit of " + std::to_string(kMaxSamplePaths));
    }

    EndpointSample sample;
    sample.n = n;
    sample.delta = p.delta();
    sample.seed = seed;
    sample.pairs.resize(paths);

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            CounterRng rng(seed, n, i);
            WalkState state;
            for (std::uint64_t k = 0; k < n; ++k) {
                state = step(state, p, rng);
            }
            sample.pairs[i] = {state.x, state.y};
        }
    };

    if (workers == 0) {
        workers = std::max(1U, std::thread::hardware_concurrency());
    }
    const std::uint64_t count = std::min<std::uint64_t>(workers, paths);
    if (count <= 1) {
        run_range(0, paths);
        return sample;
    }
    std::vector<std::jthread> pool;
    pool.reserve(count);
    const std::uint64_t chunk = (paths + count - 1) / count;
    for (std::uint64_t w = 0; w < count; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(paths, begin + chunk);
        if (begin < end) {
            pool.emplace_back(run_range, begin, end);
        }
    }
    return sample;
}

void write_endpoints_csv(std::ostream& out, const EndpointSample& sample) {
    out << "path_index,x,y\n";
    for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
        out << i << ',' << sample.pairs[i].x << ',' << sample.pairs[i].y << '\n';
    }
}

std::string endpoints_sidecar_json(const EndpointSample& sample) {
    nlohmann::ordered_json j;
    j["delta"] = sample.delta;
    j["n"] = sample.n;
    j["paths"] = sample.pairs.size();
    j["seed"] = sample.seed;
    return j.dump();
}

EndpointSample read_endpoints(std::istream& csv, const std::string& sidecar_json) {
    const auto meta = nlohmann::json::parse(sidecar_json);
    EndpointSample sample;
    sample.delta = meta.at("delta").is_null() ? std::numeric_limits<double>::infinity()
                                              : meta.at("delta").get<double>();
    sample.n = meta.at("n").get<std::uint64_t>();
    sample.seed = meta.at("seed").get<std::uint64_t>();
    const auto paths = meta.at("paths").get<std::uint64_t>();

    std::string line;
    if (!std::getline(csv, line) || line != "path_index,x,y") {
        throw DomainError("read_endpoints: missing CSV header");
    }
    sample.pairs.reserve(paths);
    while (std::getline(csv, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::uint64_t index = 0;
        Endpoint e;
        char c1 = 0;
        char c2 = 0;
        if (!(fields >> index >> c1 >> e.x >> c2 >> e.y) || c1 != ',' || c2 != ',' ||
            index != sample.pairs.size()) {
            throw DomainError("read_endpoints: malformed row '" + line + "'");
        }
        sample.pairs.push_back(e);
    }
    if (sample.pairs.size() != paths) {
        throw DomainError("read_endpoints: row count does not match sidecar");
    }
    return sample;
}

}  // namespace sticky
