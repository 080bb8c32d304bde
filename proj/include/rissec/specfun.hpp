#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace rissec::specfun {

/// Raised when an argument lies outside a function's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Modified Bessel function of the second kind, order zero.
///
/// Power series around the origin for x < 2, Steed's continued fraction
/// above. Throws DomainError for x <= 0; underflows to 0 for very large x.
double bessel_k0(double x);

/// Gauss hypergeometric 2F1(2, 1/2; 5/2; x) on [-1, 1).
///
/// Negative arguments go through the Pfaff transformation, [0, 0.5] is a
/// direct series and (0.5, 1) uses the logarithmic connection formula
/// (c - a - b = 0 here, so the plain series crawls near 1).
double hyp2f1_special(double x);

/// Error function. Thin wrapper over std::erf, kept here so every analytic
/// formula pulls its special functions from one place.
double erf(double x);

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    void validate() const;
};

/// Integrand on (0, inf). `at_zero` is the value of the removable
/// singularity at 0+, substituted for any node below kSingularityFloor.
struct Integrand {
    std::function<double(double)> f;
    std::optional<double> at_zero;

    static constexpr double kSingularityFloor = 1e-12;

    double operator()(double z) const;
};

/// Thrown when adaptive subdivision runs out before the tolerance is met.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod over a finite interval.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSpec& spec = {});

/// Integral over (0, inf) for integrands decaying at least like e^{-z}.
///
/// The range is cut into [0, 40] followed by doubling tail segments that are
/// added until a segment falls below the tolerance. Deterministic.
QuadratureResult integrate_semi_infinite_detailed(const Integrand& f,
                                                  const QuadratureSpec& spec = {});

double integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec = {});

}  // namespace rissec::specfun
