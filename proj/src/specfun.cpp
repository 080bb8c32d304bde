#include "rissec/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rissec::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTerms = 10000;

// K0 for 0 < x < 2: -(ln(x/2) + gamma) I0(x) + sum_k (x^2/4)^k / (k!)^2 H_k
double k0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;  // (x^2/4)^k / (k!)^2
    double harmonic = 0.0;
    double i0 = 1.0;
    double tail = 0.0;
    for (int k = 1; k < kMaxTerms; ++k) {
        term *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += term * harmonic;
        if (term * harmonic < 1e-17 * tail && term < 1e-17 * i0) break;
    }
    return -(std::log(0.5 * x) + std::numbers::egamma) * i0 + tail;
}

// Steed's method (CF2) for K0, x >= 2.
double k0_continued_fraction(double x) {
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < kMaxTerms; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps * 0.5) break;
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
}

// Plain Gauss series, only called with 0 <= w <= 0.5.
double gauss_series(double a, double b, double c, double w) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// 2F1(2, 1/2; 5/2; 1 - w) for 0 < w < 0.5 via the c = a + b connection
// formula:
//   Gamma(5/2)/(Gamma(2)Gamma(1/2)) * sum_n (2)_n (1/2)_n / (n!)^2
//     * [2 psi(n+1) - psi(n+2) - psi(n+1/2) - ln w] w^n
// The digamma combination reduces to 2 H_n - H_{n+1} + 2 ln 2 - 2 O_n with
// O_n = sum_{k<=n} 1/(2k-1), so the Euler constant cancels.
double hyp2f1_near_one(double w) {
    const double log_w = std::log(w);
    double coeff = 1.0;
    double h_n = 0.0;     // H_n
    double odd_n = 0.0;   // O_n
    double sum = 0.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        const double h_next = h_n + 1.0 / (n + 1.0);
        const double digammas = 2.0 * h_n - h_next + 2.0 * std::numbers::ln2 - 2.0 * odd_n;
        const double term = coeff * (digammas - log_w);
        sum += term;
        if (n > 2 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
        coeff *= (2.0 + n) * (0.5 + n) / ((n + 1.0) * (n + 1.0)) * w;
        h_n = h_next;
        odd_n += 1.0 / (2.0 * n + 1.0);
    }
    return 0.75 * sum;
}

}  // namespace

double bessel_k0(double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k0: argument must be positive");
    if (std::isinf(x)) return 0.0;
    return x < 2.0 ? k0_series(x) : k0_continued_fraction(x);
}

double hyp2f1_special(double x) {
    if (!(x >= -1.0 && x < 1.0)) {
        throw DomainError("hyp2f1_special: argument must lie in [-1, 1)");
    }
    if (x < 0.0) {
        // Pfaff: F(a,b;c;x) = (1-x)^{-b} F(c-a, b; c; x/(x-1)), maps to [0, 1/2].
        return gauss_series(0.5, 0.5, 2.5, x / (x - 1.0)) / std::sqrt(1.0 - x);
    }
    if (x <= 0.5) return gauss_series(2.0, 0.5, 2.5, x);
    return hyp2f1_near_one(1.0 - x);
}

double erf(double x) { return std::erf(x); }

}  // namespace rissec::specfun
