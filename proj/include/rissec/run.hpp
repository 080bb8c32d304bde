#pragma once

#include "rissec/config.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rissec::cli {

/// A metric could not be evaluated (quadrature failure). Names the metric
/// and, inside a sweep, the failing row.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

struct PointResult {
    SystemParams params;
    double c_th = 0.0;
    std::optional<double> asc_exact;
    std::optional<double> asc_approx;
    std::optional<double> sop_corrected;
    std::optional<double> sop_paper_literal;
    std::optional<mc::AscEstimates> mc_asc;
    std::optional<mc::McEstimate> mc_sop;
};

/// Evaluates the requested metrics at the base point (sweep ignored).
PointResult run_point(const RunConfig& cfg);

/// Evaluates one point with explicit parameters; used by sweeps.
PointResult evaluate_point(const RunConfig& cfg, const SystemParams& params, double c_th);

/// One result per sweep value, in sweep order. Requires cfg.sweep.
std::vector<PointResult> run_sweep(const RunConfig& cfg);

/// CSV header and rows. Columns: the swept parameter (sweep only), each
/// requested metric (mc_asc contributes mc_asc and mc_asc_pos), then the
/// standard-error columns of the MC metrics. 17 significant digits.
std::string csv_header(const RunConfig& cfg);
std::string csv_row(const RunConfig& cfg, const PointResult& r);
std::string sweep_csv(const RunConfig& cfg, const std::vector<PointResult>& rows);

/// Human-readable table for a single point.
void print_point_table(std::ostream& out, const RunConfig& cfg, const PointResult& r);

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string_view to_string(CheckStatus s);

struct Check {
    std::string name;
    double analytic = 0.0;
    double simulated = 0.0;
    double std_error = 0.0;
    double gap = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::Pass;
};

struct ValidationRow {
    std::optional<double> sweep_value;
    std::vector<Check> checks;
};

/// Sample variance of the destination element-gain sum against the
/// candidate analytic variances.
struct MomentAdjudication {
    mc::SampleMoments sample;
    double corrected_variance = 0.0;
    double paper_literal_variance = 0.0;  // equals corrected for V2vRisAp
    double corrected_z = 0.0;
    double paper_literal_z = 0.0;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    MomentAdjudication moments;
    bool passed() const;
};

/// Below this many trials every comparison is reported inconclusive.
inline constexpr std::int64_t kMinConclusiveTrials = 1000;

ValidationReport validate(const RunConfig& cfg);
MomentAdjudication adjudicate_moments(const SystemParams& params, const mc::McConfig& cfg);
void print_validation(std::ostream& out, const RunConfig& cfg, const ValidationReport& report);

std::string format_number(double v);

}  // namespace rissec::cli
