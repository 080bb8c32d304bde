#include "rissec/run.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace rissec::cli {

namespace {

template <typename Fn>
double guarded(std::string_view metric, Fn&& fn) {
    try {
        return fn();
    } catch (const specfun::QuadratureError& e) {
        std::ostringstream msg;
        msg << metric << ": " << e.what() << " (estimate " << format_number(e.estimate())
            << ", error bound " << format_number(e.error_bound()) << ")";
        throw NumericalError(msg.str());
    }
}

void push_cell(std::string& line, double v) {
    if (!line.empty()) line += ',';
    line += format_number(v);
}

void push_cell(std::string& line, std::string_view v) {
    if (!line.empty()) line += ',';
    line += v;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

PointResult evaluate_point(const RunConfig& cfg, const SystemParams& params, double c_th) {
    PointResult r;
    r.params = params;
    r.c_th = c_th;
    if (cfg.wants(Metric::AscExact)) {
        r.asc_exact = guarded("asc_exact", [&] { return asc_exact(params); });
    }
    if (cfg.wants(Metric::AscApprox)) r.asc_approx = asc_approx(params);
    if (cfg.wants(Metric::SopCorrected)) r.sop_corrected = sop(params, c_th, SopMode::Corrected);
    if (cfg.wants(Metric::SopPaperLiteral)) {
        r.sop_paper_literal = sop(params, c_th, SopMode::PaperLiteral);
    }
    if (cfg.wants(Metric::McAsc) || cfg.wants(Metric::McSop)) {
        const double rates[] = {c_th};
        const auto res = mc::mc_run(params, rates, *cfg.mc);
        if (cfg.wants(Metric::McAsc)) r.mc_asc = res.asc;
        if (cfg.wants(Metric::McSop)) r.mc_sop = res.sop.front();
    }
    return r;
}

PointResult run_point(const RunConfig& cfg) {
    cfg.validate();
    return evaluate_point(cfg, cfg.base, cfg.c_th);
}

std::vector<PointResult> run_sweep(const RunConfig& cfg) {
    cfg.validate();
    if (!cfg.sweep) throw ConfigError("sweep: required for a sweep run");
    std::vector<PointResult> rows;
    const auto values = cfg.sweep->values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        double c_th = 0.0;
        const SystemParams p = apply_sweep_value(cfg, values[i], c_th);
        try {
            rows.push_back(evaluate_point(cfg, p, c_th));
        } catch (const NumericalError& e) {
            throw NumericalError("sweep row " + std::to_string(i) + ": " + e.what());
        }
    }
    return rows;
}

std::string csv_header(const RunConfig& cfg) {
    std::string line;
    if (cfg.sweep) push_cell(line, to_string(cfg.sweep->param));
    for (Metric m : cfg.outputs) {
        push_cell(line, to_string(m));
        if (m == Metric::McAsc) push_cell(line, "mc_asc_pos");
    }
    for (Metric m : cfg.outputs) {
        if (m == Metric::McAsc) {
            push_cell(line, "mc_asc_se");
            push_cell(line, "mc_asc_pos_se");
        } else if (m == Metric::McSop) {
            push_cell(line, "mc_sop_se");
        }
    }
    return line + "\n";
}

std::string csv_row(const RunConfig& cfg, const PointResult& r) {
    std::string line;
    if (cfg.sweep) {
        double sweep_value = 0.0;
        switch (cfg.sweep->param) {
            case SweepParam::PS: sweep_value = r.params.p_s; break;
            case SweepParam::N0: sweep_value = r.params.n_0; break;
            case SweepParam::Beta: sweep_value = r.params.beta; break;
            case SweepParam::NCells: sweep_value = r.params.n_cells; break;
            case SweepParam::RD: sweep_value = r.params.r_d; break;
            case SweepParam::RE: sweep_value = r.params.r_e; break;
            case SweepParam::RS: sweep_value = r.params.r_s.value_or(0.0); break;
            case SweepParam::CTh: sweep_value = r.c_th; break;
        }
        push_cell(line, sweep_value);
    }
    for (Metric m : cfg.outputs) {
        switch (m) {
            case Metric::AscExact: push_cell(line, r.asc_exact.value()); break;
            case Metric::AscApprox: push_cell(line, r.asc_approx.value()); break;
            case Metric::SopCorrected: push_cell(line, r.sop_corrected.value()); break;
            case Metric::SopPaperLiteral: push_cell(line, r.sop_paper_literal.value()); break;
            case Metric::McAsc:
                push_cell(line, r.mc_asc->difference.value);
                push_cell(line, r.mc_asc->positive_part.value);
                break;
            case Metric::McSop: push_cell(line, r.mc_sop->value); break;
        }
    }
    for (Metric m : cfg.outputs) {
        if (m == Metric::McAsc) {
            push_cell(line, r.mc_asc->difference.std_error);
            push_cell(line, r.mc_asc->positive_part.std_error);
        } else if (m == Metric::McSop) {
            push_cell(line, r.mc_sop->std_error);
        }
    }
    return line + "\n";
}

std::string sweep_csv(const RunConfig& cfg, const std::vector<PointResult>& rows) {
    std::string out = csv_header(cfg);
    for (const auto& r : rows) out += csv_row(cfg, r);
    return out;
}

namespace {

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void print_point_table(std::ostream& out, const RunConfig& cfg, const PointResult& r) {
    char buf[160];
    auto line = [&](const char* name, const std::string& value) {
        std::snprintf(buf, sizeof buf, "  %-22s %s\n", name, value.c_str());
        out << buf;
    };
    out << "parameters\n";
    line("model", std::string(to_string(r.params.model)));
    line("p_s [W]", short_number(r.params.p_s));
    line("n_0", short_number(r.params.n_0));
    line("beta", short_number(r.params.beta));
    line("n_cells", std::to_string(r.params.n_cells));
    line("r_d [m]", short_number(r.params.r_d));
    line("r_e [m]", short_number(r.params.r_e));
    if (r.params.r_s) line("r_s [m]", short_number(*r.params.r_s));
    line("c_th [bit/s/Hz]", short_number(r.c_th));
    out << "metrics\n";
    auto with_se = [](double v, double se) { return short_number(v) + " +/- " + short_number(se); };
    for (Metric m : cfg.outputs) {
        switch (m) {
            case Metric::AscExact: line("asc_exact", short_number(*r.asc_exact)); break;
            case Metric::AscApprox: line("asc_approx", short_number(*r.asc_approx)); break;
            case Metric::SopCorrected: line("sop_corrected", short_number(*r.sop_corrected)); break;
            case Metric::SopPaperLiteral:
                line("sop_paper_literal", short_number(*r.sop_paper_literal));
                break;
            case Metric::McAsc:
                line("mc_asc", with_se(r.mc_asc->difference.value, r.mc_asc->difference.std_error));
                line("mc_asc_pos",
                     with_se(r.mc_asc->positive_part.value, r.mc_asc->positive_part.std_error));
                break;
            case Metric::McSop: line("mc_sop", with_se(r.mc_sop->value, r.mc_sop->std_error)); break;
        }
    }
}

MomentAdjudication adjudicate_moments(const SystemParams& params, const mc::McConfig& cfg) {
    MomentAdjudication a;
    a.sample = mc::mc_gain_sum_moments(params.model, params.n_cells, cfg);
    const auto kind = element_kind(params.model);
    const double n = params.n_cells;
    a.corrected_variance = n * channels::moments(kind, channels::ConstantSet::Corrected).variance;
    a.paper_literal_variance = n * channels::moments(kind, channels::ConstantSet::PaperLiteral).variance;
    const double se = a.sample.variance_std_error;
    if (se > 0.0) {
        a.corrected_z = (a.sample.variance - a.corrected_variance) / se;
        a.paper_literal_z = (a.sample.variance - a.paper_literal_variance) / se;
    }
    return a;
}

bool ValidationReport::passed() const {
    for (const auto& row : rows) {
        for (const auto& c : row.checks) {
            if (c.status != CheckStatus::Pass) return false;
        }
    }
    return true;
}

ValidationReport validate(const RunConfig& cfg) {
    cfg.validate();
    if (!cfg.mc) throw ConfigError("mc: validate needs an mc block (or --trials/--seed)");
    const mc::McConfig& mcc = *cfg.mc;
    const bool too_few = mcc.trials < kMinConclusiveTrials;
    // Three binomial standard errors at p = 1/2 must fit inside the SOP tolerance.
    const bool sop_unresolved =
        3.0 * std::sqrt(0.25 / static_cast<double>(mcc.trials)) > cfg.sop_tolerance;

    std::vector<double> values{0.0};
    if (cfg.sweep) values = cfg.sweep->values();

    ValidationReport report;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double c_th = cfg.c_th;
        const SystemParams p = cfg.sweep ? apply_sweep_value(cfg, values[i], c_th) : cfg.base;
        ValidationRow row;
        if (cfg.sweep) row.sweep_value = values[i];

        const double rates[] = {c_th};
        const auto sim = mc::mc_run(p, rates, mcc);

        Check asc;
        asc.name = "asc_exact vs mc difference";
        asc.analytic = guarded("asc_exact", [&] { return asc_exact(p); });
        asc.simulated = sim.asc.difference.value;
        asc.std_error = sim.asc.difference.std_error;
        asc.gap = std::abs(asc.analytic - asc.simulated);
        asc.tolerance = cfg.asc_sigmas * asc.std_error;
        asc.status = too_few ? CheckStatus::Inconclusive
                   : asc.gap <= asc.tolerance ? CheckStatus::Pass
                                              : CheckStatus::Fail;
        row.checks.push_back(asc);

        Check out;
        out.name = std::string("sop_") + (cfg.mode == SopMode::Corrected ? "corrected" : "paper_literal") +
                   " vs mc";
        out.analytic = sop(p, c_th, cfg.mode);
        out.simulated = sim.sop.front().value;
        out.std_error = sim.sop.front().std_error;
        out.gap = std::abs(out.analytic - out.simulated);
        out.tolerance = cfg.sop_tolerance;
        out.status = (too_few || sop_unresolved) ? CheckStatus::Inconclusive
                   : out.gap <= out.tolerance    ? CheckStatus::Pass
                                                 : CheckStatus::Fail;
        row.checks.push_back(out);
        report.rows.push_back(std::move(row));
    }
    report.moments = adjudicate_moments(cfg.base, mcc);
    return report;
}

void print_validation(std::ostream& out, const RunConfig& cfg, const ValidationReport& report) {
    char buf[256];
    out << "validation: model " << to_string(cfg.base.model) << ", " << cfg.mc->trials
        << " trials, seed " << cfg.mc->seed << "\n";
    if (cfg.mc->trials < kMinConclusiveTrials) {
        out << "warning: fewer than " << kMinConclusiveTrials
            << " trials; standard errors are too large to conclude\n";
    }
    for (const auto& row : report.rows) {
        if (row.sweep_value) {
            out << to_string(cfg.sweep->param) << " = " << format_number(*row.sweep_value) << "\n";
        }
        for (const auto& c : row.checks) {
            std::snprintf(buf, sizeof buf,
                          "  %-32s analytic %.9g  mc %.9g (se %.3g)  gap %.3g  tol %.3g  %s\n",
                          c.name.c_str(), c.analytic, c.simulated, c.std_error, c.gap, c.tolerance,
                          std::string(to_string(c.status)).c_str());
            out << buf;
        }
    }
    const auto& m = report.moments;
    out << "element-gain sum variance at N = " << cfg.base.n_cells << " (" << m.sample.trials
        << " trials)\n";
    std::snprintf(buf, sizeof buf, "  sample variance      %.6g (se %.3g)\n", m.sample.variance,
                  m.sample.variance_std_error);
    out << buf;
    std::snprintf(buf, sizeof buf, "  corrected constant   %.6g  (%+.2f se)\n", m.corrected_variance,
                  m.corrected_z);
    out << buf;
    std::snprintf(buf, sizeof buf, "  paper-literal        %.6g  (%+.2f se)\n",
                  m.paper_literal_variance, m.paper_literal_z);
    out << buf;
    out << (report.passed() ? "result: PASS\n" : "result: FAIL\n");
}

}  // namespace rissec::cli
