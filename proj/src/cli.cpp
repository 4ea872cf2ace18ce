#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sticky/errors.hpp"
#include "sticky/harness.hpp"

namespace sticky {
namespace {

/// Thrown for bad flag values; maps to exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by a subcommand whose numbers failed a check; maps to exit status 1.
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        part.erase(0, part.find_first_not_of(" \t"));
        part.erase(part.find_last_not_of(" \t") + 1);
        if (!part.empty()) {
            parts.push_back(part);
        }
    }
    return parts;
}

double to_real(const std::string& text, const std::string& flag) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw UsageError(flag + ": not a number: '" + text + "'");
    }
    return v;
}

std::uint64_t to_count(const std::string& text, const std::string& flag) {
    const double v = to_real(text, flag);
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) {
        throw UsageError(flag + ": not a nonnegative integer: '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<double> real_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    for (const auto& p : split(text, ',')) {
        values.push_back(to_real(p, flag));
    }
    if (values.empty()) {
        throw UsageError(flag + ": empty list");
    }
    return values;
}

std::vector<std::uint64_t> count_list(const std::string& text, const std::string& flag) {
    std::vector<std::uint64_t> values;
    for (const auto& p : split(text, ',')) {
        values.push_back(to_count(p, flag));
    }
    if (values.empty()) {
        throw UsageError(flag + ": empty list");
    }
    return values;
}

/// "a,b,c" gives the square {a,b,c}^2; "s:t,s:t" gives the listed pairs.
std::vector<std::pair<double, double>> parse_grid(const std::string& text) {
    std::vector<std::pair<double, double>> grid;
    if (text.find(':') != std::string::npos) {
        for (const auto& item : split(text, ',')) {
            const auto st = split(item, ':');
            if (st.size() != 2) {
                throw UsageError("--grid: expected s:t, got '" + item + "'");
            }
            grid.emplace_back(to_real(st[0], "--grid"), to_real(st[1], "--grid"));
        }
        return grid;
    }
    const auto values = real_list(text, "--grid");
    for (double s : values) {
        for (double t : values) {
            grid.emplace_back(s, t);
        }
    }
    return grid;
}

CouplingVariant parse_coupling(const std::string& text) {
    if (text == "kernel" || text == "kernel-derived") {
        return CouplingVariant::kernel_derived;
    }
    if (text == "paper" || text == "paper-prop2") {
        return CouplingVariant::paper_prop2;
    }
    throw UsageError("--coupling: expected kernel or paper, got '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    throw UsageError("--format: expected csv or json, got '" + text + "'");
}

StickinessParam parse_delta(const std::string& text) {
    if (text == "inf" || text == "infinity") {
        return StickinessParam::fully_sticky();
    }
    try {
        return StickinessParam::from_delta(to_real(text, "--delta"));
    } catch (const DomainError& e) {
        throw UsageError(std::string("--delta: ") + e.what());
    }
}

/// Flag values as given; every option is a single string, last one wins.
struct Flags {
    std::string n;
    std::string delta = "0";
    std::string alpha;
    std::string regime = "critical";
    std::string scale;
    std::string exponent;
    std::string grid;
    std::string paths = "0";
    std::string seed = "0";
    std::string coupling = "kernel";
    std::string tol;
    std::string out;
    std::string format = "csv";
    std::string workers = "0";
    std::string config;
    std::string erfc_table;
    std::string t_list = "0,0.5,2";
    std::string z_list = "0.3,0.6,0.9";
    std::string j_max = "5";
};

enum Flag : unsigned {
    kN = 1u << 0,
    kDelta = 1u << 1,
    kAlpha = 1u << 2,
    kRegime = 1u << 3,
    kGrid = 1u << 4,
    kPaths = 1u << 5,
    kSeed = 1u << 6,
    kCoupling = 1u << 7,
    kTol = 1u << 8,
    kOut = 1u << 9,
    kFormat = 1u << 10,
    kWorkers = 1u << 11,
    kErfcTable = 1u << 12,
    kGf = 1u << 13,
};

void add_flags(CLI::App* app, Flags& f, unsigned which) {
    const auto add = [app](const std::string& name, std::string& target, const std::string& help) {
        app->add_option(name, target, help)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    add("--config", f.config, "flat key=value file; flags on the command line win");
    if (which & kN) add("--n", f.n, "step count, or comma-separated increasing list");
    if (which & kDelta) add("--delta", f.delta, "stickiness parameter (real >= 0, or inf)");
    if (which & kAlpha) add("--alpha", f.alpha, "critical constant: delta_n = alpha sqrt(n)");
    if (which & kRegime) {
        add("--regime", f.regime, "sub, critical or super");
        add("--scale", f.scale, "c in delta_n = c n^beta (sub/super)");
        add("--exponent", f.exponent, "beta in delta_n = c n^beta (sub/super)");
    }
    if (which & kGrid) add("--grid", f.grid, "values a,b,c (square grid) or pairs s:t,s:t");
    if (which & kPaths) add("--paths", f.paths, "Monte Carlo paths, 0 for exact only");
    if (which & kSeed) add("--seed", f.seed, "64-bit seed");
    if (which & kCoupling) add("--coupling", f.coupling, "kernel or paper");
    if (which & kTol) add("--tol", f.tol, "quadrature tolerance");
    if (which & kOut) add("--out", f.out, "output path (default stdout)");
    if (which & kFormat) add("--format", f.format, "csv or json");
    if (which & kWorkers) add("--workers", f.workers, "worker threads, 0 for all cores");
    if (which & kErfcTable) add("--erfc-table", f.erfc_table, "CSV x,erfc replacing the built-in table");
    if (which & kGf) {
        add("--t", f.t_list, "t values");
        add("--z", f.z_list, "z values in (0,1)");
        add("--j", f.j_max, "largest index j");
    }
}

RegimeSpec parse_regime(const Flags& f) {
    RegimeKind kind{};
    try {
        kind = parse_regime_kind(f.regime);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--regime: ") + e.what());
    }
    RegimeSpec spec;
    if (kind == RegimeKind::critical) {
        spec = RegimeSpec::critical(f.alpha.empty() ? 2.0 : to_real(f.alpha, "--alpha"));
    } else {
        spec = kind == RegimeKind::subcritical ? RegimeSpec::subcritical() : RegimeSpec::supercritical();
        if (!f.scale.empty()) spec.scale = to_real(f.scale, "--scale");
        if (!f.exponent.empty()) spec.exponent = to_real(f.exponent, "--exponent");
    }
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return spec;
}

unsigned parse_workers(const Flags& f) {
    const auto w = to_count(f.workers, "--workers");
    if (w > 4096) {
        throw UsageError("--workers: at most 4096");
    }
    return static_cast<unsigned>(w);
}

/// A small numeric table for the single-shot subcommands.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void write(std::ostream& out, OutputFormat format) const {
        if (format == OutputFormat::csv) {
            for (std::size_t i = 0; i < columns.size(); ++i) {
                out << (i ? "," : "") << columns[i];
            }
            out << '\n';
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    out << (i ? "," : "") << format_real(row[i]);
                }
                out << '\n';
            }
            return;
        }
        auto list = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json item;
            for (std::size_t i = 0; i < row.size(); ++i) {
                item[columns[i]] = std::isfinite(row[i]) ? nlohmann::ordered_json(row[i])
                                                         : nlohmann::ordered_json(nullptr);
            }
            list.push_back(std::move(item));
        }
        out << list.dump(2) << '\n';
    }
};

void emit(const Flags& f, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (f.out.empty()) {
        body(out);
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) {
        throw UsageError("--out: cannot open '" + f.out + "'");
    }
    body(file);
    if (!file) {
        throw NumericFailure("write to '" + f.out + "' failed");
    }
}

int cmd_selftest(const Flags& f, std::ostream& out) {
    SelftestOptions options;
    options.coupling = parse_coupling(f.coupling);
    if (!f.erfc_table.empty()) {
        options.erfc_table_path = f.erfc_table;
    }
    const auto report = run_selftest(options);
    emit(f, out, [&](std::ostream& o) { o << report.to_json() << '\n'; });
    return report.passed() ? 0 : 1;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
    SweepConfig config;
    config.regime = parse_regime(f);
    config.n_list = f.n.empty() ? std::vector<std::uint64_t>{256, 1024, 4096} : count_list(f.n, "--n");
    config.grid = f.grid.empty() ? default_grid() : parse_grid(f.grid);
    config.paths = to_count(f.paths, "--paths");
    config.seed = to_count(f.seed, "--seed");
    config.coupling = parse_coupling(f.coupling);
    config.workers = parse_workers(f);
    config.format = parse_format(f.format);
    config.output_path = f.out;
    if (!f.tol.empty()) {
        config.tolerances["quad"] = to_real(f.tol, "--tol");
    }
    try {
        config.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const auto rows = run_sweep(config);
    emit(f, out, [&](std::ostream& o) { write_sweep(o, rows, config.format); });
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.error.empty(); });
    if (failed > 0) {
        err << "sweep: " << failed << " row(s) carry errors\n";
        return 1;
    }
    return 0;
}

int cmd_covariance(const Flags& f, std::ostream& out, std::ostream& err) {
    CovarianceConfig config;
    config.alpha = f.alpha.empty() ? 2.0 : to_real(f.alpha, "--alpha");
    config.n_list = f.n.empty() ? std::vector<std::uint64_t>{100, 1000, 10000} : count_list(f.n, "--n");
    config.paths = to_count(f.paths, "--paths");
    config.seed = to_count(f.seed, "--seed");
    config.workers = parse_workers(f);
    if (!f.tol.empty()) {
        config.tol = to_real(f.tol, "--tol");
    }
    if (!(config.alpha > 0.0) || !(config.tol > 0.0)) {
        throw UsageError("--alpha and --tol must be positive");
    }
    const auto format = parse_format(f.format);
    std::vector<CovarianceRow> rows;
    try {
        rows = run_covariance(config);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    emit(f, out, [&](std::ostream& o) { write_covariance(o, rows, format); });
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const CovarianceRow& r) { return !r.error.empty(); });
    if (failed > 0) {
        err << "covariance: " << failed << " row(s) carry errors\n";
        return 1;
    }
    return 0;
}

int cmd_exact_cf(const Flags& f, std::ostream& out) {
    const auto p = parse_delta(f.delta);
    const auto ns = f.n.empty() ? std::vector<std::uint64_t>{16} : count_list(f.n, "--n");
    const auto grid = f.grid.empty() ? default_grid() : parse_grid(f.grid);
    const auto coupling = parse_coupling(f.coupling);
    Table table{{"n", "delta", "s", "t", "re", "im"}, {}};
    for (auto n : ns) {
        for (const auto& [s, t] : grid) {
            const Complex v = char_fn_exact(p, s, t, n, coupling);
            table.rows.push_back({static_cast<double>(n), p.delta(), s, t, v.real(), v.imag()});
        }
    }
    emit(f, out, [&](std::ostream& o) { table.write(o, parse_format(f.format)); });
    return 0;
}

int cmd_limit_cf(const Flags& f, std::ostream& out) {
    const auto regime = parse_regime(f);
    const auto grid = f.grid.empty() ? default_grid() : parse_grid(f.grid);
    const double tol = f.tol.empty() ? 1e-10 : to_real(f.tol, "--tol");
    Table table{{"s", "t", "f_limit"}, {}};
    for (const auto& [s, t] : grid) {
        table.rows.push_back({s, t, limit_cf(regime, s, t, tol)});
    }
    emit(f, out, [&](std::ostream& o) { table.write(o, parse_format(f.format)); });
    return 0;
}

int cmd_mc(const Flags& f, std::ostream& out) {
    const auto p = parse_delta(f.delta);
    const auto n = f.n.empty() ? std::uint64_t{16} : to_count(f.n, "--n");
    const auto paths = to_count(f.paths, "--paths");
    if (paths == 0) {
        throw UsageError("--paths: mc needs at least one path");
    }
    EndpointSample sample;
    try {
        sample = simulate_endpoints(p, n, paths, to_count(f.seed, "--seed"), parse_workers(f));
    } catch (const CapacityError& e) {
        throw UsageError(e.what());
    }
    emit(f, out, [&](std::ostream& o) { write_endpoints_csv(o, sample); });
    if (!f.out.empty()) {
        std::ofstream sidecar(f.out + ".json");
        sidecar << endpoints_sidecar_json(sample) << '\n';
    }
    return 0;
}

int cmd_gf_check(const Flags& f, std::ostream& out, std::ostream& err) {
    const auto p = parse_delta(f.delta);
    const auto ts = real_list(f.t_list, "--t");
    const auto zs = real_list(f.z_list, "--z");
    const auto j_max = to_count(f.j_max, "--j");
    const double tol = f.tol.empty() ? 1e-12 : to_real(f.tol, "--tol");
    Table table{{"t", "z", "j", "closed_re", "closed_im", "series_re", "series_im", "abs_err", "bound"}, {}};
    int failures = 0;
    for (double z : zs) {
        if (!(z > 0.0 && z < 1.0)) {
            throw UsageError("--z: values must lie in (0, 1)");
        }
        const auto terms = gf_series_terms_for(z, tol);
        const double bound = std::pow(z, static_cast<double>(terms + 1)) / (1.0 - z);
        for (double t : ts) {
            const auto point = gf_point(p, t, z);
            for (std::uint64_t j = 0; j <= j_max; ++j) {
                const Complex closed = point.at(j);
                const Complex series = gf_series(p, t, z, j, terms);
                const double diff = std::abs(closed - series);
                failures += diff > bound + 1e-12 ? 1 : 0;
                table.rows.push_back({t, z, static_cast<double>(j), closed.real(), closed.imag(),
                                      series.real(), series.imag(), diff, bound});
            }
        }
    }
    emit(f, out, [&](std::ostream& o) { table.write(o, parse_format(f.format)); });
    if (failures > 0) {
        err << "gf-check: " << failures << " point(s) outside the series tail bound\n";
        return 1;
    }
    return 0;
}

/// Splices the config file's key=value pairs in as flags right after the
/// subcommand, so anything typed on the command line comes later and wins.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty() || args.empty()) {
        return args;
    }
    std::ifstream in(path);
    if (!in) {
        throw UsageError("--config: cannot open '" + path + "'");
    }
    std::stringstream text;
    text << in.rdbuf();
    std::vector<std::pair<std::string, std::string>> pairs;
    try {
        pairs = parse_config_text(text.str());
    } catch (const DomainError& e) {
        throw UsageError(std::string("--config: ") + e.what());
    }
    std::vector<std::string> expanded{args.front()};
    for (const auto& [key, value] : pairs) {
        if (key == "config") {
            throw UsageError("--config: nested config files are not supported");
        }
        expanded.push_back("--" + key);
        expanded.push_back(value);
    }
    expanded.insert(expanded.end(), args.begin() + 1, args.end());
    return expanded;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sticky random walk laboratory", "stickylab"};
    app.require_subcommand(1);
    Flags flags;

    struct Command {
        CLI::App* app;
        std::function<int()> run;
    };
    std::vector<Command> commands;
    const auto add = [&](const std::string& name, const std::string& help, unsigned which, std::function<int()> run) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_flags(sub, flags, which);
        commands.push_back({sub, std::move(run)});
    };
    add("selftest", "run every module's invariant suites", kCoupling | kOut | kErfcTable,
        [&] { return cmd_selftest(flags, out); });
    add("sweep", "exact, Monte Carlo and limiting characteristic functions across n",
        kN | kAlpha | kRegime | kGrid | kPaths | kSeed | kCoupling | kTol | kOut | kFormat | kWorkers,
        [&] { return cmd_sweep(flags, out, err); });
    add("covariance", "n^-1 E[S1 S2] at delta = alpha sqrt(n) against its limit",
        kN | kAlpha | kPaths | kSeed | kTol | kOut | kFormat | kWorkers,
        [&] { return cmd_covariance(flags, out, err); });
    add("exact-cf", "exact characteristic function at unscaled (s, t)",
        kN | kDelta | kGrid | kCoupling | kOut | kFormat, [&] { return cmd_exact_cf(flags, out); });
    add("limit-cf", "limiting characteristic function of a regime", kAlpha | kRegime | kGrid | kTol | kOut | kFormat,
        [&] { return cmd_limit_cf(flags, out); });
    add("mc", "simulate endpoints (CSV, with a JSON sidecar next to --out)",
        kN | kDelta | kPaths | kSeed | kOut | kWorkers, [&] { return cmd_mc(flags, out); });
    add("gf-check", "closed-form generating functions against truncated series",
        kDelta | kTol | kOut | kFormat | kGf, [&] { return cmd_gf_check(flags, out, err); });

    try {
        auto tokens = expand_config(args);
        std::reverse(tokens.begin(), tokens.end());
        app.parse(tokens);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    for (const auto& command : commands) {
        if (!command.app->parsed()) {
            continue;
        }
        try {
            return command.run();
        } catch (const UsageError& e) {
            err << "usage error: " << e.what() << '\n';
            return 2;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return 1;
        }
    }
    return 2;
}

}  // namespace sticky
