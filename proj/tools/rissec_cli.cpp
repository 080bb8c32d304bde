// rissec: secrecy metrics for RIS-assisted vehicular links.
//
//   rissec eval     --config point.json [--csv]
//   rissec sweep    --config configs/fig4.json --out fig4.csv
//   rissec validate --config point.json --trials 100000
//
// Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical failure.

#include "rissec/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace rissec;
using namespace rissec::cli;

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<std::string> mode;
    std::optional<std::string> model;
    int threads = 0;
    bool dump_config = false;
    bool csv = false;
};

RunConfig resolve(const Options& opt) {
    RunConfig cfg;
    if (!opt.config_path.empty()) {
        cfg = load_config(opt.config_path);
    } else {
        const std::string model = opt.model.value_or("v2v_ris_ap");
        cfg = parse_config(R"({"base": {"model": ")" + model + R"("}})");
    }
    if (opt.seed || opt.trials) {
        if (!cfg.mc) cfg.mc = mc::McConfig{};
        if (opt.seed) cfg.mc->seed = *opt.seed;
        if (opt.trials) cfg.mc->trials = *opt.trials;
    }
    if (cfg.mc) cfg.mc->threads = opt.threads;
    if (opt.mode) {
        if (*opt.mode == "corrected") {
            cfg.mode = SopMode::Corrected;
        } else if (*opt.mode == "paper-literal") {
            cfg.mode = SopMode::PaperLiteral;
        } else {
            throw ConfigError("--mode: expected corrected or paper-literal");
        }
    }
    cfg.validate();
    return cfg;
}

// Writes to --out when given, stdout otherwise.
template <typename Fn>
void with_output(const Options& opt, Fn&& fn) {
    if (opt.out_path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream file(opt.out_path);
    if (!file) throw ConfigError("cannot open output file '" + opt.out_path + "'");
    fn(file);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy capacity and outage analysis for RIS-enabled vehicular networks"};
    app.require_subcommand(1);
    // Global options may also follow the subcommand.
    app.fallthrough();
    Options opt;
    app.add_option("--config", opt.config_path, "JSON run configuration");
    app.add_option("--out", opt.out_path, "Output file (default stdout)");
    app.add_option("--seed", opt.seed, "Override mc.seed");
    app.add_option("--trials", opt.trials, "Override mc.trials");
    app.add_option("--mode", opt.mode, "Relay SOP constants: corrected | paper-literal");
    app.add_option("--model", opt.model, "Model when no config is given: v2v_ris_ap | vanet_ris_relay");
    app.add_option("--threads", opt.threads, "Monte-Carlo worker threads (0 = RISSEC_THREADS or all cores)");
    app.add_flag("--dump-config", opt.dump_config, "Print the resolved config as JSON and exit");

    auto* eval = app.add_subcommand("eval", "Evaluate the requested metrics at one point");
    eval->add_flag("--csv", opt.csv, "Emit a CSV header and row instead of a table");
    auto* sweep = app.add_subcommand("sweep", "Run a 1-D parameter sweep and emit CSV");
    auto* check = app.add_subcommand("validate", "Compare analytic metrics against Monte-Carlo");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        const RunConfig cfg = resolve(opt);
        if (opt.dump_config) {
            with_output(opt, [&](std::ostream& out) { out << dump_config(cfg); });
            return kOk;
        }
        if (eval->parsed()) {
            const PointResult r = run_point(cfg);
            with_output(opt, [&](std::ostream& out) {
                if (opt.csv) {
                    RunConfig point = cfg;
                    point.sweep.reset();
                    out << csv_header(point) << csv_row(point, r);
                } else {
                    print_point_table(out, cfg, r);
                }
            });
            return kOk;
        }
        if (sweep->parsed()) {
            const auto rows = run_sweep(cfg);
            with_output(opt, [&](std::ostream& out) { out << sweep_csv(cfg, rows); });
            return kOk;
        }
        if (check->parsed()) {
            const ValidationReport report = validate(cfg);
            with_output(opt, [&](std::ostream& out) { print_validation(out, cfg, report); });
            return report.passed() ? kOk : kValidationFailed;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const InvalidParams& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
    return kOk;
}
