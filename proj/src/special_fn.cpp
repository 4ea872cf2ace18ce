#include "sticky/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "sticky/errors.hpp"

namespace sticky {
namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// e^{x^2} with x^2 split into its rounded value and rounding error, so the
// argument error is not amplified by the exponential for large |x|.
double exp_of_square(double x) {
    const double hi = x * x;
    const double lo = std::fma(x, x, -hi);
    return std::exp(hi) * (1.0 + lo);
}

constexpr int kWeidemanTerms = 40;

struct WeidemanTable {
    std::array<double, kWeidemanTerms> coeff{};  // coefficient of Z^k
    double scale = 0.0;                          // L = sqrt(N / sqrt 2)
};

WeidemanTable make_weideman_table() {
    constexpr int n = kWeidemanTerms;
    constexpr int m = 2 * n;
    constexpr int len = 2 * m;
    WeidemanTable table;
    table.scale = std::sqrt(n / std::numbers::sqrt2);
    const double l = table.scale;

    // Samples of (L^2 + t^2) e^{-t^2} on the tangent grid t = L tan(theta/2),
    // stored in FFT order (index 0 is theta = 0, wrapped negative angles last).
    std::vector<double> samples(len, 0.0);
    for (int k = -m + 1; k <= m - 1; ++k) {
        const double theta = k * std::numbers::pi / m;
        const double t = l * std::tan(theta / 2.0);
        samples[(k + len) % len] = std::exp(-t * t) * (l * l + t * t);
    }
    for (int j = 1; j <= n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < len; ++i) {
            acc += samples[i] * std::cos(2.0 * std::numbers::pi * j * i / len);
        }
        table.coeff[j - 1] = acc / len;
    }
    return table;
}

Complex faddeeva_weideman(Complex z) {
    static const WeidemanTable table = make_weideman_table();
    const Complex i_unit(0.0, 1.0);
    const Complex denom = table.scale - i_unit * z;
    const Complex zz = (table.scale + i_unit * z) / denom;
    Complex p = 0.0;
    for (int k = kWeidemanTerms - 1; k >= 0; --k) {
        p = p * zz + table.coeff[k];
    }
    return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

// Laplace continued fraction i/sqrt(pi) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))),
// Im z >= 0, |z| large.
Complex faddeeva_continued_fraction(Complex z) {
    constexpr int kTerms = 64;
    Complex tail = 0.0;
    for (int k = kTerms; k >= 1; --k) {
        tail = (0.5 * k) / (z - tail);
    }
    return Complex(0.0, kInvSqrtPi) / (z - tail);
}

Complex faddeeva_upper(Complex z) {
    if (std::abs(z) < 12.0) {
        return faddeeva_weideman(z);
    }
    return faddeeva_continued_fraction(z);
}

// GK15 abscissae (positive half) and weights, from QUADPACK qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * (f1 + f2);
        }
    }
    const double value = kronrod * half;
    const double error = std::abs((kronrod - gauss) * half);
    return {a, b, value, error};
}

}  // namespace

double erfc_real(double x) { return std::erfc(x); }

double erfcx_real(double x) {
    if (std::isnan(x)) {
        return x;
    }
    if (x < 0.0) {
        return 2.0 * exp_of_square(x) - erfcx_real(-x);
    }
    if (x < 25.0) {
        return exp_of_square(x) * std::erfc(x);
    }
    // erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    constexpr int kTerms = 24;
    double tail = 0.0;
    for (int k = kTerms; k >= 1; --k) {
        tail = (0.5 * k) / (x + tail);
    }
    return kInvSqrtPi / (x + tail);
}

Complex faddeeva_w(Complex z) {
    if (z.imag() >= 0.0) {
        return faddeeva_upper(z);
    }
    return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

Complex erfcx_complex(Complex z) {
    if (z.imag() == 0.0) {
        return {erfcx_real(z.real()), 0.0};
    }
    return faddeeva_w(Complex(-z.imag(), z.real()));
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
    if (!(options.tol > 0.0)) {
        throw DomainError("integrate: tolerance must be positive");
    }
    if (!(b > a)) {
        if (a == b) {
            return {};
        }
        throw DomainError("integrate: require a <= b");
    }

    std::function<double(double)> g;
    double lo = a;
    double hi = b;
    if (options.singular_sqrt_at_left) {
        g = [&f, a](double y) { return y == 0.0 ? 0.0 : 2.0 * y * f(a + y * y); };
        lo = 0.0;
        hi = std::sqrt(b - a);
    } else {
        g = f;
    }
    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod_15(g, lo, hi);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);
    int intervals = 1;

    while (total_error > options.tol) {
        if (intervals >= options.max_intervals) {
            throw QuadratureError("integrate: no convergence within " +
                                      std::to_string(options.max_intervals) +
                                      " intervals, estimated error " +
                                      std::to_string(total_error),
                                  total_error);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            throw QuadratureError("integrate: interval collapsed below machine resolution",
                                  total_error);
        }
        Segment left = gauss_kronrod_15(g, worst.a, mid);
        Segment right = gauss_kronrod_15(g, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }

    // Re-sum to shed the drift accumulated by incremental updates.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, intervals};
}

double integrate_01(const std::function<double(double)>& f, bool singular_sqrt_at_zero,
                    double tol) {
    QuadratureOptions options;
    options.tol = tol;
    options.singular_sqrt_at_left = singular_sqrt_at_zero;
    return integrate(f, 0.0, 1.0, options).value;
}

}  // namespace sticky
