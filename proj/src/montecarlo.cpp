#include "rissec/montecarlo.hpp"

#include "rissec/channels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

namespace rissec::mc {

namespace {

// Welford accumulator with Chan's pairwise merge.
struct RunningStats {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const RunningStats& other) {
        if (other.n == 0) return;
        if (n == 0) {
            *this = other;
            return;
        }
        const double total = static_cast<double>(n + other.n);
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.n) / total;
        m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) / total;
        n += other.n;
    }

    McEstimate estimate() const {
        McEstimate e;
        e.value = mean;
        e.trials = n;
        e.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
        return e;
    }
};

// Runs `body(stream, count) -> Partial` for every batch, possibly on several
// threads, and returns the partials in batch order.
template <typename Partial, typename Body>
std::vector<Partial> run_batches(const McConfig& cfg, Body&& body) {
    const std::int64_t n_batches = (cfg.trials + cfg.batch - 1) / cfg.batch;
    std::vector<Partial> partials(static_cast<std::size_t>(n_batches));
    const RngStream root(cfg.seed);

    auto run_one = [&](std::int64_t index) {
        RngStream stream = root.split(static_cast<std::uint64_t>(index));
        const std::int64_t count = std::min(cfg.batch, cfg.trials - index * cfg.batch);
        partials[static_cast<std::size_t>(index)] = body(stream, count);
    };

    const int threads = static_cast<int>(std::min<std::int64_t>(resolve_threads(cfg), n_batches));
    if (threads <= 1) {
        for (std::int64_t i = 0; i < n_batches; ++i) run_one(i);
        return partials;
    }

    std::atomic<std::int64_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::int64_t i = next++; i < n_batches; i = next++) run_one(i);
        });
    }
    workers.clear();  // joins
    return partials;
}

struct PointPartial {
    RunningStats difference;
    RunningStats positive_part;
    std::vector<std::int64_t> outages;
};

}  // namespace

void McConfig::validate() const {
    if (trials < 1) throw InvalidParams("mc.trials", "must be >= 1");
    if (batch < 1) throw InvalidParams("mc.batch", "must be >= 1");
    if (threads < 0) throw InvalidParams("mc.threads", "must be >= 0");
}

int resolve_threads(const McConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("RISSEC_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SnrPair mc_snr_pair(const SystemParams& params, RngStream& rng, bool shared_source_channel,
                    bool mirror_links) {
    double sum_d = 0.0;
    double sum_e = 0.0;
    const bool relay = params.model == Model::VanetRisRelay;
    for (int n = 0; n < params.n_cells; ++n) {
        const double source = relay ? channels::sample_rayleigh(rng) : 1.0;
        const double g_d = channels::sample(channels::FadingKind::DoubleRayleigh, rng);
        sum_d += source * g_d;
        if (mirror_links) continue;
        const double g_e = channels::sample(channels::FadingKind::DoubleRayleigh, rng);
        const double source_e = (relay && !shared_source_channel) ? channels::sample_rayleigh(rng) : source;
        sum_e += source_e * g_e;
    }
    if (mirror_links) sum_e = sum_d;
    return {snr_scale(params, Link::Destination) * sum_d,
            snr_scale(params, Link::Eavesdropper) * sum_e};
}

McPointResult mc_run(const SystemParams& params, std::span<const double> thresholds,
                     const McConfig& cfg) {
    params.validate();
    cfg.validate();
    for (double c : thresholds) {
        if (!(c > 0.0)) throw InvalidParams("c_th", "must be positive");
    }
    const std::vector<double> rates(thresholds.begin(), thresholds.end());

    auto partials = run_batches<PointPartial>(cfg, [&](RngStream& rng, std::int64_t count) {
        PointPartial p;
        p.outages.assign(rates.size(), 0);
        for (std::int64_t t = 0; t < count; ++t) {
            const SnrPair snr = mc_snr_pair(params, rng, cfg.shared_source_channel, cfg.mirror_links);
            const double diff =
                (std::log1p(snr.destination) - std::log1p(snr.eavesdropper)) / std::numbers::ln2;
            const double secrecy = std::max(diff, 0.0);
            p.difference.push(diff);
            p.positive_part.push(secrecy);
            for (std::size_t k = 0; k < rates.size(); ++k) {
                if (secrecy < rates[k]) ++p.outages[k];
            }
        }
        return p;
    });

    RunningStats difference;
    RunningStats positive_part;
    std::vector<std::int64_t> outages(rates.size(), 0);
    for (const auto& p : partials) {
        difference.merge(p.difference);
        positive_part.merge(p.positive_part);
        for (std::size_t k = 0; k < rates.size(); ++k) outages[k] += p.outages[k];
    }

    McPointResult out;
    out.asc = {difference.estimate(), positive_part.estimate()};
    const double n = static_cast<double>(cfg.trials);
    for (std::int64_t hits : outages) {
        const double prob = static_cast<double>(hits) / n;
        out.sop.push_back({prob, std::sqrt(prob * (1.0 - prob) / n), cfg.trials});
    }
    return out;
}

AscEstimates mc_asc(const SystemParams& params, const McConfig& cfg) {
    return mc_run(params, {}, cfg).asc;
}

McEstimate mc_sop(const SystemParams& params, double c_th, const McConfig& cfg) {
    const double rates[] = {c_th};
    return mc_run(params, rates, cfg).sop.front();
}

SampleMoments mc_gain_sum_moments(Model model, int n_cells, const McConfig& cfg) {
    if (n_cells < 1) throw InvalidParams("n_cells", "must be >= 1");
    cfg.validate();
    // Power sums are taken about the analytic mean to keep them well scaled.
    const double shift = n_cells * channels::moments(element_kind(model)).mean;
    struct Sums {
        double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    };
    auto partials = run_batches<Sums>(cfg, [&](RngStream& rng, std::int64_t count) {
        Sums s;
        for (std::int64_t t = 0; t < count; ++t) {
            double sum = 0.0;
            for (int n = 0; n < n_cells; ++n) {
                const double source = model == Model::VanetRisRelay ? channels::sample_rayleigh(rng) : 1.0;
                sum += source * channels::sample(channels::FadingKind::DoubleRayleigh, rng);
            }
            const double d = sum - shift;
            const double d2 = d * d;
            s.s1 += d;
            s.s2 += d2;
            s.s3 += d2 * d;
            s.s4 += d2 * d2;
        }
        return s;
    });
    Sums total;
    for (const auto& p : partials) {
        total.s1 += p.s1;
        total.s2 += p.s2;
        total.s3 += p.s3;
        total.s4 += p.s4;
    }
    const double n = static_cast<double>(cfg.trials);
    const double mu = total.s1 / n;  // mean offset from the shift
    const double raw2 = total.s2 / n;
    const double raw3 = total.s3 / n;
    const double raw4 = total.s4 / n;
    const double m2 = raw2 - mu * mu;
    const double m4 = raw4 - 4.0 * mu * raw3 + 6.0 * mu * mu * raw2 - 3.0 * mu * mu * mu * mu;

    SampleMoments out;
    out.trials = cfg.trials;
    out.mean = shift + mu;
    out.variance = cfg.trials > 1 ? m2 * n / (n - 1.0) : 0.0;
    out.mean_std_error = std::sqrt(out.variance / n);
    out.variance_std_error =
        cfg.trials > 3 ? std::sqrt(std::max(0.0, (m4 - (n - 3.0) / (n - 1.0) * m2 * m2) / n)) : 0.0;
    return out;
}

}  // namespace rissec::mc
