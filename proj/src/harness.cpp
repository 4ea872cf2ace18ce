#include "sticky/harness.hpp"

#include <cmath>
#include <exception>

#include "parallel.hpp"
#include "sticky/errors.hpp"
#include "sticky/param_kernel.hpp"

namespace sticky {

void SweepConfig::validate() const {
    regime.validate();
    if (n_list.empty()) {
        throw DomainError("sweep: n list is empty");
    }
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) {
            throw DomainError("sweep: n list must be strictly increasing");
        }
    }
    if (n_list.front() == 0) {
        throw DomainError("sweep: n must be at least 1");
    }
    if (grid.empty()) {
        throw DomainError("sweep: grid is empty");
    }
    for (const auto& [key, value] : tolerances) {
        if (!(value > 0.0)) {
            throw DomainError("sweep: tolerance '" + key + "' must be positive");
        }
    }
}

double SweepConfig::tolerance(const std::string& key, double fallback) const {
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

std::vector<std::pair<double, double>> default_grid() {
    const double values[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    std::vector<std::pair<double, double>> grid;
    for (double s : values) {
        for (double t : values) {
            grid.emplace_back(s, t);
        }
    }
    return grid;
}

namespace {

struct McMoments {
    double mean = 0.0;
    double stderr_ = 0.0;
};

template <class Fn>
McMoments sample_moments(const EndpointSample& sample, Fn&& value_of) {
    const auto count = static_cast<double>(sample.pairs.size());
    double sum = 0.0;
    for (const auto& e : sample.pairs) {
        sum += value_of(e);
    }
    const double mean = sum / count;
    double ss = 0.0;
    for (const auto& e : sample.pairs) {
        const double d = value_of(e) - mean;
        ss += d * d;
    }
    const double var = sample.pairs.size() > 1 ? ss / (count - 1.0) : 0.0;
    return {mean, std::sqrt(var / count)};
}

constexpr double kImagTol = 1e-10;

}  // namespace

std::vector<ReportRow> run_sweep(const SweepConfig& config) {
    config.validate();
    const double quad_tol = config.tolerance("quad", 1e-10);
    const std::size_t per_n = config.grid.size();

    struct PerN {
        double delta = 0.0;
        std::optional<EndpointSample> sample;
        std::string error;
    };
    std::vector<PerN> levels(config.n_list.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const std::uint64_t n = config.n_list[i];
        levels[i].delta = config.regime.delta_at(n);
        if (config.paths > 0) {
            try {
                levels[i].sample = simulate_endpoints(StickinessParam::from_delta(levels[i].delta),
                                                      n, config.paths, config.seed, config.workers);
            } catch (const std::exception& e) {
                levels[i].error = std::string("mc: ") + e.what();
            }
        }
    }

    std::vector<double> limits(per_n, 0.0);
    std::vector<std::string> limit_errors(per_n);
    detail::parallel_for(per_n, config.workers, [&](std::size_t g) {
        try {
            limits[g] = limit_cf(config.regime, config.grid[g].first, config.grid[g].second, quad_tol);
        } catch (const std::exception& e) {
            limits[g] = std::nan("");
            limit_errors[g] = std::string("limit: ") + e.what();
        }
    });

    std::vector<ReportRow> rows(config.n_list.size() * per_n);
    detail::parallel_for(rows.size(), config.workers, [&](std::size_t index) {
        const std::size_t level = index / per_n;
        const std::size_t g = index % per_n;
        const auto& info = levels[level];
        ReportRow& row = rows[index];
        row.n = config.n_list[level];
        row.delta = info.delta;
        row.s = config.grid[g].first;
        row.t = config.grid[g].second;
        row.f_limit = limits[g];
        std::string error = limit_errors[g];
        const double scale = 1.0 / std::sqrt(static_cast<double>(row.n));
        try {
            const auto p = StickinessParam::from_delta(row.delta);
            const Complex f = char_fn_exact(p, row.s * scale, row.t * scale, row.n, config.coupling);
            if (std::abs(f.imag()) > kImagTol) {
                throw DomainError("imaginary part " + format_real(f.imag()) + " above tolerance");
            }
            row.f_exact = f.real();
        } catch (const std::exception& e) {
            row.f_exact = std::nan("");
            error += (error.empty() ? "" : "; ") + std::string("exact: ") + e.what();
        }
        row.err_exact_limit = std::abs(row.f_exact - row.f_limit);

        if (info.sample) {
            const double a = row.s * scale;
            const double b = row.t * scale;
            const auto m = sample_moments(*info.sample, [a, b](const Endpoint& e) {
                return std::cos(a * static_cast<double>(e.x) + b * static_cast<double>(e.y));
            });
            row.f_mc = m.mean;
            row.mc_stderr = m.stderr_;
            row.err_mc_exact = std::abs(m.mean - row.f_exact);
        } else if (!info.error.empty()) {
            error += (error.empty() ? "" : "; ") + info.error;
        }
        row.error = error;
    });
    return rows;
}

std::vector<CovarianceRow> run_covariance(const CovarianceConfig& config) {
    if (!(config.alpha > 0.0)) {
        throw DomainError("covariance: alpha must be positive");
    }
    if (config.n_list.empty()) {
        throw DomainError("covariance: n list is empty");
    }
    for (std::size_t i = 1; i < config.n_list.size(); ++i) {
        if (config.n_list[i] <= config.n_list[i - 1]) {
            throw DomainError("covariance: n list must be strictly increasing");
        }
    }
    if (config.n_list.front() == 0) {
        throw DomainError("covariance: n must be at least 1");
    }

    double limit = std::nan("");
    std::string limit_error;
    try {
        limit = covariance_limit(config.alpha, config.tol);
    } catch (const std::exception& e) {
        limit_error = std::string("limit: ") + e.what();
    }

    std::vector<CovarianceRow> rows(config.n_list.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CovarianceRow& row = rows[i];
        row.n = config.n_list[i];
        const auto dn = static_cast<double>(row.n);
        row.delta = config.alpha * std::sqrt(dn);
        row.limit = limit;
        std::string error = limit_error;
        try {
            const auto p = StickinessParam::from_delta(row.delta);
            row.exact = exact_covariance(p, row.n) / dn;
            if (config.paths > 0) {
                const auto sample = simulate_endpoints(p, row.n, config.paths, config.seed, config.workers);
                const auto m = sample_moments(sample, [dn](const Endpoint& e) {
                    return static_cast<double>(e.x) * static_cast<double>(e.y) / dn;
                });
                row.mc = m.mean;
                row.mc_stderr = m.stderr_;
            }
        } catch (const std::exception& e) {
            error += (error.empty() ? "" : "; ") + std::string(e.what());
        }
        row.err_exact_limit = std::abs(row.exact - row.limit);
        row.error = error;
    }
    return rows;
}

}  // namespace sticky
