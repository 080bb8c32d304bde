#pragma once

#include "rissec/rng.hpp"
#include "rissec/secrecy.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rissec::mc {

inline constexpr std::uint64_t kDefaultSeed = 20200611;
inline constexpr std::int64_t kDefaultTrials = 100000;

/// Monte-Carlo run settings.
///
/// Trials are cut into fixed batches of `batch` trials; batch i draws from
/// RngStream(seed).split(i), and per-batch sums are reduced in batch order.
/// Results therefore depend on (trials, seed, batch) only, never on `threads`.
struct McConfig {
    std::int64_t trials = kDefaultTrials;
    std::uint64_t seed = kDefaultSeed;
    std::int64_t batch = 4096;
    // Relay model: destination and eavesdropper terms of element n reuse the
    // same source-to-RIS draw within a trial.
    bool shared_source_channel = true;
    // Eavesdropper link reuses the destination's fading draws. Only the
    // difference-of-capacities estimator stays unbiased under this coupling.
    bool mirror_links = false;
    // 0 = RISSEC_THREADS from the environment, else hardware concurrency.
    int threads = 0;

    void validate() const;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

struct SnrPair {
    double destination;
    double eavesdropper;
};

/// One joint draw of the instantaneous SNRs at D and E.
SnrPair mc_snr_pair(const SystemParams& params, RngStream& rng,
                    bool shared_source_channel = true, bool mirror_links = false);

struct AscEstimates {
    McEstimate difference;     // mean of log2(1+gD) - log2(1+gE)
    McEstimate positive_part;  // mean of max(log2((1+gD)/(1+gE)), 0)
};

/// Everything one pass over the trials yields: both ASC estimators and an
/// SOP estimate per threshold, all on the same draws.
struct McPointResult {
    AscEstimates asc;
    std::vector<McEstimate> sop;
};

McPointResult mc_run(const SystemParams& params, std::span<const double> thresholds,
                     const McConfig& cfg);

AscEstimates mc_asc(const SystemParams& params, const McConfig& cfg);
McEstimate mc_sop(const SystemParams& params, double c_th, const McConfig& cfg);

/// Sample statistics of the unscaled element-gain sum seen at the
/// destination: sum_n g_{D,n} (V2V) or sum_n g_{s,n} g_{D,n} (relay).
struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0;
    double mean_std_error = 0.0;
    double variance_std_error = 0.0;
    std::int64_t trials = 0;
};

SampleMoments mc_gain_sum_moments(Model model, int n_cells, const McConfig& cfg);

/// Thread count actually used for a config (resolves threads = 0).
int resolve_threads(const McConfig& cfg);

}  // namespace rissec::mc
