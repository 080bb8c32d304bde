#include "rissec/channels.hpp"

#include "rissec/specfun.hpp"

#include <cmath>
#include <numbers>

namespace rissec::channels {

namespace {

using specfun::Integrand;
using specfun::QuadratureSpec;

constexpr double kPi = std::numbers::pi;

// Inner integrals feed outer ones, so they run well below the outer tolerance.
const QuadratureSpec kInnerSpec{1e-12, 0.0, 2000};

// Below this argument 1 - M(s) comes from the moment series.
constexpr double kSeriesCutoff = 0.25;

// sum_{k>=1} (-1)^{k+1} s^k E[g^k] / k!  with  E[g^k] = 2^k Gamma(1 + k/2)^2
double double_rayleigh_complement_series(double s) {
    const double log_2s = std::log(2.0 * s);
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double log_term = k * log_2s + 2.0 * std::lgamma(1.0 + 0.5 * k) -
                                std::lgamma(k + 1.0);
        const double term = std::exp(log_term);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

void require_nonnegative(double s) {
    if (!(s >= 0.0)) throw specfun::DomainError("mgf: argument must be nonnegative");
}

double triple_direct(double s) {
    Integrand f{[s](double y) { return y * std::exp(-0.5 * y * y) * mgf_double_rayleigh(s * y); },
                0.0};
    return specfun::integrate_semi_infinite(f, kInnerSpec);
}

double triple_complement_direct(double s) {
    Integrand f{[s](double y) {
                    return y * std::exp(-0.5 * y * y) * mgf_double_rayleigh_complement(s * y);
                },
                0.0};
    return specfun::integrate_semi_infinite(f, kInnerSpec);
}

}  // namespace

std::string_view to_string(FadingKind kind) {
    switch (kind) {
        case FadingKind::Rayleigh: return "rayleigh";
        case FadingKind::DoubleRayleigh: return "double_rayleigh";
        case FadingKind::TripleCascade: return "triple_cascade";
    }
    return "unknown";
}

double pdf(FadingKind kind, double g) {
    if (!(g > 0.0)) throw specfun::DomainError("pdf: argument must be positive");
    switch (kind) {
        case FadingKind::Rayleigh:
            return g * std::exp(-0.5 * g * g);
        case FadingKind::DoubleRayleigh:
            return g * specfun::bessel_k0(g);
        case FadingKind::TripleCascade: {
            // f3(g) = int (1/y) f_Ray(y) f_Dbl(g/y) dy = g int exp(-y^2/2) K0(g/y) / y dy
            Integrand f{[g](double y) {
                            const double arg = g / y;
                            if (arg > 740.0) return 0.0;
                            return std::exp(-0.5 * y * y) * specfun::bessel_k0(arg) / y;
                        },
                        0.0};
            return g * specfun::integrate_semi_infinite(f, QuadratureSpec{1e-11, 0.0, 2000});
        }
    }
    return 0.0;
}

ChannelMoments moments(FadingKind kind, ConstantSet constants) {
    switch (kind) {
        case FadingKind::Rayleigh:
            return {std::sqrt(kPi / 2.0), 2.0 - kPi / 2.0};
        case FadingKind::DoubleRayleigh:
            return {kPi / 2.0, 4.0 - kPi * kPi / 4.0};
        case FadingKind::TripleCascade: {
            const double mean = std::pow(kPi / 2.0, 1.5);
            const double variance = constants == ConstantSet::Corrected
                                        ? 8.0 - std::pow(kPi / 2.0, 3.0)
                                        : 8.0 - std::pow(kPi / 2.0, 1.5);
            return {mean, variance};
        }
    }
    return {0.0, 0.0};
}

double mgf_double_rayleigh(double s) {
    require_nonnegative(s);
    if (s == 0.0) return 1.0;
    if (std::isinf(s)) return 0.0;
    const double x = (s - 1.0) / (s + 1.0);
    return 4.0 / (3.0 * (1.0 + s) * (1.0 + s)) * specfun::hyp2f1_special(x);
}

double mgf_double_rayleigh_complement(double s) {
    require_nonnegative(s);
    if (s == 0.0) return 0.0;
    if (s < kSeriesCutoff) return double_rayleigh_complement_series(s);
    return 1.0 - mgf_double_rayleigh(s);
}

double mgf_triple_cascade(double s) {
    require_nonnegative(s);
    if (s == 0.0) return 1.0;
    if (s <= 1.0) return 1.0 - triple_complement_direct(s);
    return triple_direct(s);
}

double mgf_triple_cascade_complement(double s) {
    require_nonnegative(s);
    if (s == 0.0) return 0.0;
    if (s <= 1.0) return triple_complement_direct(s);
    return 1.0 - triple_direct(s);
}

double sample(FadingKind kind, RngStream& rng) {
    switch (kind) {
        case FadingKind::Rayleigh:
            return sample_rayleigh(rng);
        case FadingKind::DoubleRayleigh: {
            const double a = sample_rayleigh(rng);
            return a * sample_rayleigh(rng);
        }
        case FadingKind::TripleCascade: {
            const double a = sample_rayleigh(rng);
            const double b = sample_rayleigh(rng);
            return a * b * sample_rayleigh(rng);
        }
    }
    return 0.0;
}

}  // namespace rissec::channels
