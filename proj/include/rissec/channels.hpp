#pragma once

#include "rissec/rng.hpp"

#include <cmath>
#include <string_view>

namespace rissec::channels {

/// Per-element fading amplitude law. All Rayleigh factors use the unit
/// convention f(g) = g exp(-g^2/2), so E[g^2] = 2.
enum class FadingKind {
    Rayleigh,       // g exp(-g^2/2)
    DoubleRayleigh, // product of two Rayleigh variates, pdf g K0(g)
    TripleCascade,  // product of three Rayleigh variates
};

std::string_view to_string(FadingKind kind);

/// Which constants to report for the triple cascade. `PaperLiteral` keeps
/// the per-element variance 8 - (pi/2)^{3/2} exactly as printed in the
/// source derivation; `Corrected` uses the true value 8 - (pi/2)^3.
enum class ConstantSet { Corrected, PaperLiteral };

struct ChannelMoments {
    double mean;
    double variance;
};

/// Probability density. Throws specfun::DomainError for g <= 0.
/// The triple cascade density is a single quadrature over the Rayleigh factor.
double pdf(FadingKind kind, double g);

ChannelMoments moments(FadingKind kind, ConstantSet constants = ConstantSet::Corrected);

/// E[exp(-s g)] for g ~ DoubleRayleigh, from the closed form
/// (4/3)(1+s)^{-2} 2F1(2, 1/2; 5/2; (s-1)/(s+1)).
double mgf_double_rayleigh(double s);

/// 1 - mgf_double_rayleigh(s), accurate when s is small (moment series).
double mgf_double_rayleigh_complement(double s);

/// E[exp(-s g)] for g ~ TripleCascade, conditioning on the Rayleigh factor:
/// integral of y exp(-y^2/2) mgf_double_rayleigh(s y) dy over (0, inf).
double mgf_triple_cascade(double s);

/// 1 - mgf_triple_cascade(s), accurate when s is small.
double mgf_triple_cascade_complement(double s);

/// One draw. Rayleigh by inverse transform, cascades as products of
/// independent Rayleigh draws (two or three uniforms consumed).
double sample(FadingKind kind, RngStream& rng);

inline double sample_rayleigh(RngStream& rng) {
    return std::sqrt(-2.0 * std::log(rng.uniform()));
}

}  // namespace rissec::channels
