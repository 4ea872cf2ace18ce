#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "sticky/errors.hpp"
#include "sticky/harness.hpp"

namespace sticky {
namespace {

std::string csv_escape(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::string optional_real(const std::optional<double>& v) {
    return v ? format_real(*v) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

double parse_real(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw DomainError("not a real number: '" + text + "'");
    }
    return v;
}

std::optional<double> parse_optional_real(const std::string& text) {
    if (text.empty()) {
        return std::nullopt;
    }
    return parse_real(text);
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

constexpr const char* kSweepHeader =
    "n,delta,s,t,f_exact,f_mc,f_limit,err_exact_limit,err_mc_exact,mc_stderr,error";

}  // namespace

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_sweep(std::ostream& out, const std::vector<ReportRow>& rows, OutputFormat format) {
    if (format == OutputFormat::json) {
        auto array = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["n"] = r.n;
            j["delta"] = r.delta;
            j["s"] = r.s;
            j["t"] = r.t;
            j["f_exact"] = r.f_exact;
            j["f_mc"] = optional_json(r.f_mc);
            j["f_limit"] = r.f_limit;
            j["err_exact_limit"] = r.err_exact_limit;
            j["err_mc_exact"] = optional_json(r.err_mc_exact);
            j["mc_stderr"] = optional_json(r.mc_stderr);
            j["error"] = r.error;
            array.push_back(std::move(j));
        }
        out << array.dump(2) << '\n';
        return;
    }
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << format_real(r.delta) << ',' << format_real(r.s) << ','
            << format_real(r.t) << ',' << format_real(r.f_exact) << ',' << optional_real(r.f_mc)
            << ',' << format_real(r.f_limit) << ',' << format_real(r.err_exact_limit) << ','
            << optional_real(r.err_mc_exact) << ',' << optional_real(r.mc_stderr) << ','
            << csv_escape(r.error) << '\n';
    }
}

std::vector<ReportRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepHeader) {
        throw DomainError("read_sweep_csv: unexpected header");
    }
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 11) {
            throw DomainError("read_sweep_csv: expected 11 fields in '" + line + "'");
        }
        ReportRow r;
        r.n = std::stoull(f[0]);
        r.delta = parse_real(f[1]);
        r.s = parse_real(f[2]);
        r.t = parse_real(f[3]);
        r.f_exact = parse_real(f[4]);
        r.f_mc = parse_optional_real(f[5]);
        r.f_limit = parse_real(f[6]);
        r.err_exact_limit = parse_real(f[7]);
        r.err_mc_exact = parse_optional_real(f[8]);
        r.mc_stderr = parse_optional_real(f[9]);
        r.error = f[10];
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_covariance(std::ostream& out, const std::vector<CovarianceRow>& rows,
                      OutputFormat format) {
    if (format == OutputFormat::json) {
        auto array = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["n"] = r.n;
            j["delta"] = r.delta;
            j["exact"] = r.exact;
            j["mc"] = optional_json(r.mc);
            j["mc_stderr"] = optional_json(r.mc_stderr);
            j["limit"] = r.limit;
            j["err_exact_limit"] = r.err_exact_limit;
            j["error"] = r.error;
            array.push_back(std::move(j));
        }
        out << array.dump(2) << '\n';
        return;
    }
    out << "n,delta,exact,mc,mc_stderr,limit,err_exact_limit,error\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_real(r.delta) << ',' << format_real(r.exact) << ','
            << optional_real(r.mc) << ',' << optional_real(r.mc_stderr) << ','
            << format_real(r.limit) << ',' << format_real(r.err_exact_limit) << ','
            << csv_escape(r.error) << '\n';
    }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw DomainError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(body.substr(0, eq));
        if (key.empty()) {
            throw DomainError("config line " + std::to_string(line_no) + ": empty key");
        }
        entries.emplace_back(std::move(key), trim(body.substr(eq + 1)));
    }
    return entries;
}

}  // namespace sticky
