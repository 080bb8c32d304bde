#pragma once

#include "rissec/montecarlo.hpp"
#include "rissec/secrecy.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rissec::cli {

/// Bad or inconsistent configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepParam { PS, N0, Beta, NCells, RD, RE, RS, CTh };
enum class SweepScale { Linear, Log };

enum class Metric { AscExact, AscApprox, SopCorrected, SopPaperLiteral, McAsc, McSop };

std::string_view to_string(SweepParam p);
std::string_view to_string(SweepScale s);
std::string_view to_string(Metric m);

struct SweepSpec {
    SweepParam param = SweepParam::PS;
    double start = 1.0;
    double stop = 50.0;
    int steps = 25;
    SweepScale scale = SweepScale::Linear;

    void validate() const;
    /// Grid points in sweep order; endpoints are hit exactly.
    std::vector<double> values() const;
};

struct RunConfig {
    SystemParams base;
    std::optional<SweepSpec> sweep;
    double c_th = 1.0;
    std::optional<mc::McConfig> mc;
    std::vector<Metric> outputs{Metric::AscExact, Metric::AscApprox, Metric::SopCorrected};
    // SOP formula that `validate` checks against simulation.
    SopMode mode = SopMode::Corrected;
    double sop_tolerance = 0.02;
    double asc_sigmas = 3.0;

    void validate() const;
    bool wants(Metric m) const;
};

/// Parse a JSON document. Every field except base.model has a default.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Fully resolved config as pretty-printed JSON; parse_config(dump_config(c))
/// reproduces c.
std::string dump_config(const RunConfig& cfg);

/// Applies one sweep coordinate to a copy of the base point.
/// c_th is returned through `c_th` since it is not a system parameter.
SystemParams apply_sweep_value(const RunConfig& cfg, double value, double& c_th);

}  // namespace rissec::cli
