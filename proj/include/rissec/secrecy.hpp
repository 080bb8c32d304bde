#pragma once

#include "rissec/channels.hpp"
#include "rissec/specfun.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>

namespace rissec {

/// The two RIS deployments.
///   V2vRisAp:      the source vehicle transmits through an RIS access point;
///                  every RIS-to-receiver element gain is double Rayleigh.
///   VanetRisRelay: a fixed source reflects off a building-mounted RIS; each
///                  element sees Rayleigh (source leg) times double Rayleigh.
enum class Model { V2vRisAp, VanetRisRelay };

enum class Link { Destination, Eavesdropper };

/// SOP constants for the relay model. Both modes coincide for V2vRisAp.
enum class SopMode { Corrected, PaperLiteral };

std::string_view to_string(Model model);
std::string_view to_string(Link link);
std::string_view to_string(SopMode mode);

/// Field-level parameter validation failure.
class InvalidParams : public std::invalid_argument {
public:
    InvalidParams(std::string_view field, std::string_view message);

    std::string_view field() const noexcept { return field_; }

private:
    std::string field_;
};

struct SystemParams {
    Model model = Model::V2vRisAp;
    double p_s = 10.0;   // source power [W]
    double n_0 = 1.0;    // noise power, normalised
    double beta = 2.7;   // path-loss exponent
    int n_cells = 16;    // RIS elements N
    double r_d = 4.0;    // RIS to destination [m]
    double r_e = 8.0;    // RIS to eavesdropper [m]
    std::optional<double> r_s;  // source to RIS [m], relay model only

    /// Documented defaults for a model (r_s = 10 m for the relay).
    static SystemParams defaults(Model model);

    void validate() const;
};

/// Per-element fading law seen by a receiver under the given model.
channels::FadingKind element_kind(Model model);

/// SNR scale multiplying the element-gain sum:
/// P_s r_i^{-beta} / N_0, times r_s^{-beta} for the relay model.
double snr_scale(const SystemParams& params, Link link);

/// MGF of the received SNR, [M_elem(z * scale)]^N.
double link_mgf(const SystemParams& params, Link link, double z);

/// 1 - link_mgf, computed without cancellation for small z * scale.
double link_mgf_complement(const SystemParams& params, Link link, double z);

/// Ergodic capacity E[log2(1 + gamma)] in bits/s/Hz via
///   (1/ln 2) int_0^inf (1 - M(z)) e^{-z} / z dz.
/// Throws specfun::QuadratureError if the integral does not converge.
double avg_capacity(const SystemParams& params, Link link,
                    const specfun::QuadratureSpec& spec = {});

/// Jensen upper bound log2(1 + E[gamma]) on avg_capacity.
double capacity_jensen_bound(const SystemParams& params, Link link);

/// Difference of the two ergodic capacities; negative when the eavesdropper
/// is closer. See asc_exact_clamped for the positive part.
double asc_exact(const SystemParams& params, const specfun::QuadratureSpec& spec = {});
double asc_exact_clamped(const SystemParams& params, const specfun::QuadratureSpec& spec = {});

/// Closed-form Jensen approximation of the ASC (no quadrature).
double asc_approx(const SystemParams& params);

/// CLT secrecy outage probability for target rate c_th > 0 (bits/s/Hz).
double sop(const SystemParams& params, double c_th, SopMode mode = SopMode::Corrected);

struct SecrecyReport {
    double c_d = 0.0;
    double c_e = 0.0;
    double asc_exact = 0.0;
    double asc_approx = 0.0;
    double sop_corrected = 0.0;
    double sop_paper_literal = 0.0;
};

SecrecyReport evaluate(const SystemParams& params, double c_th,
                       const specfun::QuadratureSpec& spec = {});

}  // namespace rissec
