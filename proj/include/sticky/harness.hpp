#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sticky/exact_engine.hpp"
#include "sticky/limit_laws.hpp"

namespace sticky {

enum class OutputFormat { csv, json };

struct SweepConfig {
    RegimeSpec regime = RegimeSpec::critical(2.0);
    std::vector<std::uint64_t> n_list;
    std::vector<std::pair<double, double>> grid;
    /// Monte Carlo paths per n; zero disables the MC columns.
    std::uint64_t paths = 0;
    std::uint64_t seed = 0;
    /// Recognised keys: "quad" (quadrature tolerance for the critical limit).
    std::map<std::string, double> tolerances = {{"quad", 1e-10}};
    CouplingVariant coupling = CouplingVariant::kernel_derived;
    unsigned workers = 0;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;

    /// Throws DomainError: n_list must be strictly increasing and nonempty,
    /// grid nonempty, tolerances positive.
    void validate() const;
    double tolerance(const std::string& key, double fallback) const;
};

/// {-2, -1, -0.5, 0.5, 1, 2}^2.
std::vector<std::pair<double, double>> default_grid();

struct ReportRow {
    std::uint64_t n = 0;
    double delta = 0.0;
    double s = 0.0;
    double t = 0.0;
    double f_exact = 0.0;
    std::optional<double> f_mc;
    double f_limit = 0.0;
    double err_exact_limit = 0.0;
    std::optional<double> err_mc_exact;
    std::optional<double> mc_stderr;
    std::string error;
};

/// For each n: delta_n from the regime, f_exact = char_fn_exact at
/// (s/sqrt n, t/sqrt n), optional Monte Carlo mean of cos((s x + t y)/sqrt n),
/// and the regime's limit. Rows come out in (n, grid index) order whatever
/// the worker count; a failing row carries its message in `error`.
std::vector<ReportRow> run_sweep(const SweepConfig& config);

struct CovarianceRow {
    std::uint64_t n = 0;
    double delta = 0.0;
    double exact = 0.0;
    std::optional<double> mc;
    std::optional<double> mc_stderr;
    double limit = 0.0;
    double err_exact_limit = 0.0;
    std::string error;
};

struct CovarianceConfig {
    double alpha = 2.0;
    std::vector<std::uint64_t> n_list;
    std::uint64_t paths = 0;
    std::uint64_t seed = 0;
    double tol = 1e-12;
    unsigned workers = 0;
};

/// n^-1 E[S1 S2] at delta = alpha sqrt(n): exact, Monte Carlo (if paths > 0)
/// and the limiting value.
std::vector<CovarianceRow> run_covariance(const CovarianceConfig& config);

void write_sweep(std::ostream& out, const std::vector<ReportRow>& rows, OutputFormat format);
void write_covariance(std::ostream& out, const std::vector<CovarianceRow>& rows,
                      OutputFormat format);
/// Parses the CSV produced by write_sweep().
std::vector<ReportRow> read_sweep_csv(std::istream& in);

/// Flat `key = value` lines; blank lines and `#` comments are skipped.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

/// Decimal with 17 significant digits; "nan"/"inf"/"-inf" for non-finite.
std::string format_real(double value);

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SelftestOptions {
    CouplingVariant coupling = CouplingVariant::kernel_derived;
    /// CSV `x,erfc` rows replacing the built-in erfc reference table.
    std::optional<std::string> erfc_table_path;
};

struct SelftestReport {
    std::vector<SuiteResult> suites;
    bool passed() const;
    std::string to_json() const;
};

/// Every module's invariant checks at pinned, fast parameters.
SelftestReport run_selftest(const SelftestOptions& options);

/// Command-line entry point. Returns 0 on success, 1 on a numeric failure
/// and 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sticky
