#include "rissec/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rissec::cli {

using nlohmann::json;

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(const json& node, std::string_view field,
                const std::pair<std::string_view, Enum> (&table)[N]) {
    if (!node.is_string()) throw ConfigError(std::string(field) + ": expected a string");
    const auto text = node.get<std::string>();
    for (const auto& [name, value] : table) {
        if (name == text) return value;
    }
    throw ConfigError(std::string(field) + ": unknown value '" + text + "'");
}

constexpr std::pair<std::string_view, Model> kModels[] = {
    {"v2v_ris_ap", Model::V2vRisAp}, {"vanet_ris_relay", Model::VanetRisRelay}};
constexpr std::pair<std::string_view, SweepParam> kParams[] = {
    {"p_s", SweepParam::PS},     {"n_0", SweepParam::N0}, {"beta", SweepParam::Beta},
    {"n_cells", SweepParam::NCells}, {"r_d", SweepParam::RD}, {"r_e", SweepParam::RE},
    {"r_s", SweepParam::RS},     {"c_th", SweepParam::CTh}};
constexpr std::pair<std::string_view, SweepScale> kScales[] = {
    {"linear", SweepScale::Linear}, {"log", SweepScale::Log}};
constexpr std::pair<std::string_view, Metric> kMetrics[] = {
    {"asc_exact", Metric::AscExact},         {"asc_approx", Metric::AscApprox},
    {"sop_corrected", Metric::SopCorrected}, {"sop_paper_literal", Metric::SopPaperLiteral},
    {"mc_asc", Metric::McAsc},               {"mc_sop", Metric::McSop}};
constexpr std::pair<std::string_view, SopMode> kModes[] = {
    {"corrected", SopMode::Corrected}, {"paper-literal", SopMode::PaperLiteral}};

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum value, const std::pair<std::string_view, Enum> (&table)[N]) {
    for (const auto& [name, v] : table) {
        if (v == value) return name;
    }
    return "?";
}

void reject_unknown_keys(const json& obj, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(std::string(where) + key + ": unknown field");
        }
    }
}

double get_number(const json& obj, const char* key, std::string_view where, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string(where) + key + ": expected a number");
    return v.get<double>();
}

std::int64_t get_integer(const json& obj, const char* key, std::string_view where,
                         std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::floor(d) == d) return static_cast<std::int64_t>(d);
    }
    throw ConfigError(std::string(where) + key + ": expected an integer");
}

bool get_bool(const json& obj, const char* key, std::string_view where, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(std::string(where) + key + ": expected true/false");
    return v.get<bool>();
}

SystemParams parse_base(const json& node) {
    if (!node.is_object()) throw ConfigError("base: expected an object");
    reject_unknown_keys(node, "base.", {"model", "p_s", "n_0", "beta", "n_cells", "r_d", "r_e", "r_s"});
    if (!node.contains("model")) throw ConfigError("base.model: required");
    SystemParams p = SystemParams::defaults(parse_enum(node.at("model"), "base.model", kModels));
    p.p_s = get_number(node, "p_s", "base.", p.p_s);
    p.n_0 = get_number(node, "n_0", "base.", p.n_0);
    p.beta = get_number(node, "beta", "base.", p.beta);
    p.n_cells = static_cast<int>(get_integer(node, "n_cells", "base.", p.n_cells));
    p.r_d = get_number(node, "r_d", "base.", p.r_d);
    p.r_e = get_number(node, "r_e", "base.", p.r_e);
    if (node.contains("r_s")) p.r_s = get_number(node, "r_s", "base.", 0.0);
    return p;
}

SweepSpec parse_sweep(const json& node) {
    if (!node.is_object()) throw ConfigError("sweep: expected an object");
    reject_unknown_keys(node, "sweep.", {"param", "start", "stop", "steps", "scale"});
    SweepSpec s;
    if (!node.contains("param")) throw ConfigError("sweep.param: required");
    s.param = parse_enum(node.at("param"), "sweep.param", kParams);
    s.start = get_number(node, "start", "sweep.", s.start);
    s.stop = get_number(node, "stop", "sweep.", s.stop);
    s.steps = static_cast<int>(get_integer(node, "steps", "sweep.", s.steps));
    if (node.contains("scale")) s.scale = parse_enum(node.at("scale"), "sweep.scale", kScales);
    return s;
}

mc::McConfig parse_mc(const json& node) {
    if (!node.is_object()) throw ConfigError("mc: expected an object");
    reject_unknown_keys(node, "mc.", {"trials", "seed", "batch", "shared_source_channel", "mirror_links"});
    mc::McConfig m;
    m.trials = get_integer(node, "trials", "mc.", m.trials);
    if (node.contains("seed")) {
        const auto& v = node.at("seed");
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw ConfigError("mc.seed: expected a non-negative integer");
        }
        m.seed = v.get<std::uint64_t>();
    }
    m.batch = get_integer(node, "batch", "mc.", m.batch);
    m.shared_source_channel = get_bool(node, "shared_source_channel", "mc.", m.shared_source_channel);
    m.mirror_links = get_bool(node, "mirror_links", "mc.", m.mirror_links);
    return m;
}

}  // namespace

std::string_view to_string(SweepParam p) { return enum_name(p, kParams); }
std::string_view to_string(SweepScale s) { return enum_name(s, kScales); }
std::string_view to_string(Metric m) { return enum_name(m, kMetrics); }

void SweepSpec::validate() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
        throw ConfigError("sweep: start must be < stop");
    }
    if (steps < 2) throw ConfigError("sweep.steps: must be >= 2");
    if (scale == SweepScale::Log && !(start > 0.0)) {
        throw ConfigError("sweep.start: log scale requires start > 0");
    }
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / (steps - 1);
        out[static_cast<std::size_t>(i)] =
            scale == SweepScale::Linear
                ? start + (stop - start) * t
                : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * t);
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

bool RunConfig::wants(Metric m) const {
    return std::find(outputs.begin(), outputs.end(), m) != outputs.end();
}

void RunConfig::validate() const {
    try {
        base.validate();
    } catch (const InvalidParams& e) {
        throw ConfigError(std::string("base.") + e.what());
    }
    if (!(c_th > 0.0) || !std::isfinite(c_th)) throw ConfigError("c_th: must be positive");
    if (outputs.empty()) throw ConfigError("outputs: at least one output is required");
    if ((wants(Metric::McAsc) || wants(Metric::McSop)) && !mc) {
        throw ConfigError("outputs: mc_asc/mc_sop require an mc block");
    }
    if (mc) {
        try {
            mc->validate();
        } catch (const InvalidParams& e) {
            throw ConfigError(e.what());
        }
    }
    if (!(sop_tolerance > 0.0)) throw ConfigError("sop_tolerance: must be positive");
    if (!(asc_sigmas > 0.0)) throw ConfigError("asc_sigmas: must be positive");
    if (sweep) {
        sweep->validate();
        if (sweep->param == SweepParam::RS && base.model != Model::VanetRisRelay) {
            throw ConfigError("sweep.param: r_s only applies to vanet_ris_relay");
        }
        double c = c_th;
        for (double v : sweep->values()) {
            try {
                apply_sweep_value(*this, v, c).validate();
            } catch (const InvalidParams& e) {
                throw ConfigError(std::string("sweep: ") + e.what());
            }
            if (!(c > 0.0)) throw ConfigError("sweep: c_th values must be positive");
        }
    }
}

SystemParams apply_sweep_value(const RunConfig& cfg, double value, double& c_th) {
    SystemParams p = cfg.base;
    c_th = cfg.c_th;
    if (!cfg.sweep) return p;
    switch (cfg.sweep->param) {
        case SweepParam::PS: p.p_s = value; break;
        case SweepParam::N0: p.n_0 = value; break;
        case SweepParam::Beta: p.beta = value; break;
        case SweepParam::NCells: p.n_cells = static_cast<int>(std::lround(value)); break;
        case SweepParam::RD: p.r_d = value; break;
        case SweepParam::RE: p.r_e = value; break;
        case SweepParam::RS: p.r_s = value; break;
        case SweepParam::CTh: c_th = value; break;
    }
    return p;
}

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    reject_unknown_keys(doc, "", {"base", "sweep", "c_th", "mc", "outputs", "mode",
                                  "sop_tolerance", "asc_sigmas"});
    if (!doc.contains("base")) throw ConfigError("base: required");

    RunConfig cfg;
    try {
        cfg.base = parse_base(doc.at("base"));
        if (doc.contains("sweep") && !doc.at("sweep").is_null()) cfg.sweep = parse_sweep(doc.at("sweep"));
        cfg.c_th = get_number(doc, "c_th", "", cfg.c_th);
        if (doc.contains("mc") && !doc.at("mc").is_null()) cfg.mc = parse_mc(doc.at("mc"));
        if (doc.contains("outputs")) {
            const auto& outs = doc.at("outputs");
            if (!outs.is_array()) throw ConfigError("outputs: expected an array");
            cfg.outputs.clear();
            for (const auto& o : outs) {
                const Metric m = parse_enum(o, "outputs", kMetrics);
                if (!cfg.wants(m)) cfg.outputs.push_back(m);
            }
        }
        if (doc.contains("mode")) cfg.mode = parse_enum(doc.at("mode"), "mode", kModes);
        cfg.sop_tolerance = get_number(doc, "sop_tolerance", "", cfg.sop_tolerance);
        cfg.asc_sigmas = get_number(doc, "asc_sigmas", "", cfg.asc_sigmas);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string dump_config(const RunConfig& cfg) {
    json doc;
    json base;
    base["model"] = std::string(to_string(cfg.base.model));
    base["p_s"] = cfg.base.p_s;
    base["n_0"] = cfg.base.n_0;
    base["beta"] = cfg.base.beta;
    base["n_cells"] = cfg.base.n_cells;
    base["r_d"] = cfg.base.r_d;
    base["r_e"] = cfg.base.r_e;
    if (cfg.base.r_s) base["r_s"] = *cfg.base.r_s;
    doc["base"] = base;
    if (cfg.sweep) {
        doc["sweep"] = {{"param", std::string(to_string(cfg.sweep->param))},
                        {"start", cfg.sweep->start},
                        {"stop", cfg.sweep->stop},
                        {"steps", cfg.sweep->steps},
                        {"scale", std::string(to_string(cfg.sweep->scale))}};
    }
    doc["c_th"] = cfg.c_th;
    if (cfg.mc) {
        doc["mc"] = {{"trials", cfg.mc->trials},
                     {"seed", cfg.mc->seed},
                     {"batch", cfg.mc->batch},
                     {"shared_source_channel", cfg.mc->shared_source_channel},
                     {"mirror_links", cfg.mc->mirror_links}};
    }
    json outs = json::array();
    for (Metric m : cfg.outputs) outs.push_back(std::string(to_string(m)));
    doc["outputs"] = outs;
    doc["mode"] = std::string(enum_name(cfg.mode, kModes));
    doc["sop_tolerance"] = cfg.sop_tolerance;
    doc["asc_sigmas"] = cfg.asc_sigmas;
    return doc.dump(2) + "\n";
}

}  // namespace rissec::cli
