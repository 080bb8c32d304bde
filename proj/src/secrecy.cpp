#include "rissec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rissec {

namespace {

constexpr double kPi = std::numbers::pi;

double element_mgf_complement(Model model, double s) {
    return model == Model::V2vRisAp ? channels::mgf_double_rayleigh_complement(s)
                                    : channels::mgf_triple_cascade_complement(s);
}

double element_mgf(Model model, double s) {
    return model == Model::V2vRisAp ? channels::mgf_double_rayleigh(s)
                                    : channels::mgf_triple_cascade(s);
}

double element_mean(Model model) { return channels::moments(element_kind(model)).mean; }

void require_positive(double value, std::string_view field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidParams(field, "must be a finite positive number");
    }
}

}  // namespace

std::string_view to_string(Model model) {
    return model == Model::V2vRisAp ? "v2v_ris_ap" : "vanet_ris_relay";
}

std::string_view to_string(Link link) {
    return link == Link::Destination ? "destination" : "eavesdropper";
}

std::string_view to_string(SopMode mode) {
    return mode == SopMode::Corrected ? "corrected" : "paper-literal";
}

InvalidParams::InvalidParams(std::string_view field, std::string_view message)
    : std::invalid_argument(std::string(field) + ": " + std::string(message)), field_(field) {}

SystemParams SystemParams::defaults(Model model) {
    SystemParams p;
    p.model = model;
    if (model == Model::VanetRisRelay) p.r_s = 10.0;
    return p;
}

void SystemParams::validate() const {
    require_positive(p_s, "p_s");
    require_positive(n_0, "n_0");
    require_positive(beta, "beta");
    if (n_cells < 1) throw InvalidParams("n_cells", "must be >= 1");
    require_positive(r_d, "r_d");
    require_positive(r_e, "r_e");
    if (model == Model::VanetRisRelay) {
        if (!r_s) throw InvalidParams("r_s", "required for the relay model");
        require_positive(*r_s, "r_s");
    } else if (r_s) {
        throw InvalidParams("r_s", "only valid for the relay model");
    }
}

channels::FadingKind element_kind(Model model) {
    return model == Model::V2vRisAp ? channels::FadingKind::DoubleRayleigh
                                    : channels::FadingKind::TripleCascade;
}

double snr_scale(const SystemParams& params, Link link) {
    const double r = link == Link::Destination ? params.r_d : params.r_e;
    double scale = params.p_s * std::pow(r, -params.beta) / params.n_0;
    if (params.model == Model::VanetRisRelay) scale *= std::pow(params.r_s.value(), -params.beta);
    return scale;
}

double link_mgf(const SystemParams& params, Link link, double z) {
    const double m = element_mgf(params.model, z * snr_scale(params, link));
    return std::pow(m, params.n_cells);
}

double link_mgf_complement(const SystemParams& params, Link link, double z) {
    const double c = element_mgf_complement(params.model, z * snr_scale(params, link));
    // 1 - (1 - c)^N
    return -std::expm1(params.n_cells * std::log1p(-c));
}

double avg_capacity(const SystemParams& params, Link link, const specfun::QuadratureSpec& spec) {
    params.validate();
    const double scale = snr_scale(params, link);
    const double slope_at_zero = params.n_cells * element_mean(params.model) * scale;
    specfun::Integrand f{[&](double z) {
                             return link_mgf_complement(params, link, z) * std::exp(-z) / z;
                         },
                         slope_at_zero};
    const double nats = specfun::integrate_semi_infinite(f, spec);
    return std::max(0.0, nats / std::numbers::ln2);
}

double capacity_jensen_bound(const SystemParams& params, Link link) {
    return std::log2(1.0 + params.n_cells * element_mean(params.model) * snr_scale(params, link));
}

double asc_exact(const SystemParams& params, const specfun::QuadratureSpec& spec) {
    return avg_capacity(params, Link::Destination, spec) -
           avg_capacity(params, Link::Eavesdropper, spec);
}

double asc_exact_clamped(const SystemParams& params, const specfun::QuadratureSpec& spec) {
    return std::max(0.0, asc_exact(params, spec));
}

double asc_approx(const SystemParams& params) {
    params.validate();
    const double n = params.n_cells;
    const double gain_d = params.p_s * std::pow(params.r_d, -params.beta);
    const double gain_e = params.p_s * std::pow(params.r_e, -params.beta);
    if (params.model == Model::V2vRisAp) {
        return std::log2((2.0 * params.n_0 + n * kPi * gain_d) /
                         (2.0 * params.n_0 + n * kPi * gain_e));
    }
    const double source_leg = std::pow(*params.r_s, -params.beta);
    const double pi32 = std::pow(kPi, 1.5);
    return std::log2((2.0 * std::numbers::sqrt2 * params.n_0 + n * pi32 * source_leg * gain_d) /
                     (2.0 * std::numbers::sqrt2 * params.n_0 + n * pi32 * source_leg * gain_e));
}

double sop(const SystemParams& params, double c_th, SopMode mode) {
    params.validate();
    if (!(c_th > 0.0)) throw InvalidParams("c_th", "must be positive");
    const double nu = std::exp2(c_th);
    const double n = params.n_cells;
    const double path_ratio = std::pow(params.r_e / params.r_d, -params.beta);
    const double dest_scale = snr_scale(params, Link::Destination);

    double mean_coeff = 0.0;
    double variance = 0.0;
    if (params.model == Model::V2vRisAp) {
        const auto m = channels::moments(channels::FadingKind::DoubleRayleigh);
        mean_coeff = m.mean;
        variance = m.variance;
    } else if (mode == SopMode::Corrected) {
        const auto m = channels::moments(channels::FadingKind::TripleCascade);
        mean_coeff = m.mean;
        variance = m.variance;
    } else {
        // Constants exactly as printed for the relay SOP.
        mean_coeff = std::pow(kPi, 3.0) / (2.0 * std::numbers::sqrt2);
        variance = channels::moments(channels::FadingKind::TripleCascade,
                                     channels::ConstantSet::PaperLiteral)
                       .variance;
    }

    const double numer = (nu - 1.0) / dest_scale + n * mean_coeff * (nu * path_ratio - 1.0);
    const double denom = std::sqrt(2.0 * n * variance);
    return std::clamp(0.5 * (1.0 + specfun::erf(numer / denom)), 0.0, 1.0);
}

SecrecyReport evaluate(const SystemParams& params, double c_th, const specfun::QuadratureSpec& spec) {
    SecrecyReport r;
    r.c_d = avg_capacity(params, Link::Destination, spec);
    r.c_e = avg_capacity(params, Link::Eavesdropper, spec);
    r.asc_exact = r.c_d - r.c_e;
    r.asc_approx = asc_approx(params);
    r.sop_corrected = sop(params, c_th, SopMode::Corrected);
    r.sop_paper_literal = sop(params, c_th, SopMode::PaperLiteral);
    return r;
}

}  // namespace rissec
