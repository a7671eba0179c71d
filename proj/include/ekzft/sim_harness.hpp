#pragma once

#include "ekzft/filter_engine.hpp"
#include "ekzft/series.hpp"
#include "ekzft/spectral_analysis.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ekzft {

// Deterministic standard-normal noise scaled by sigma.  The generator is
// pinned: mt19937_64 seeded with `seed`, uniforms taken as the top 53 bits,
// normals via the Box-Muller transform (both values of each pair used).
// Identical (n, sigma, seed) always produces bit-identical output.
RealSeries white_noise(std::size_t n, double sigma, std::uint64_t seed);

// Seed of replicate r (1-based) for a base seed: splitmix64 finalizer
// applied to seed + r * 0x9e3779b97f4a7c15.  Depends only on (seed, r), so
// replicates can be evaluated in any order.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t replicate);

struct ExperimentConfig {
    std::size_t length = 1000;   // n
    double sigma = 1.0;          // noise standard deviation
    std::uint64_t seed = 20240101;
    int replicates = 200;        // R
    FilterSpec spec;
    std::vector<int> comparison_windows; // neighboring odd windows, audit only
};

// Relative deviation of the filtered mean periodogram from the
// sigma^2-scaled exact transfer, over the bins whose transfer gain exceeds
// gain_threshold.
struct DeviationSummary {
    double max_relative = 0.0;
    double mean_relative = 0.0;
    std::size_t bins = 0;
    double gain_threshold = 0.05;
};

struct ExperimentReport {
    PeriodogramCurve raw_periodogram_mean;      // grid j/n
    PeriodogramCurve filtered_periodogram_mean; // grid j/n_filtered
    TransferCurve theory_curve;                 // exact gains * sigma^2, on the filtered grid
    DeviationSummary deviation_summary;
    ExperimentConfig config;
    std::size_t filtered_length = 0;

    std::string to_json() const;
};

// White-noise band-pass experiment: for each replicate, generate noise from
// its substream seed, filter with config.spec (edge positions dropped),
// average the raw and filtered periodograms across replicates, and compare
// the filtered mean against sigma^2 times the exact transfer.
ExperimentReport run_band_experiment(const ExperimentConfig& config);

// One audited filter: its exact gains at the reference filter's harmonic
// shifts j/m_r, its half-power shift, and its gain at the target shift
// 1/m_r of the reference filter.
struct AuditEntry {
    std::string label;
    double window_length = 0.0;
    int iterations = 1;
    double frequency = 0.0;
    double half_power = 0.0;
    std::vector<double> shifts; // j/m_r of the audited spec, j = 1..floor(m_r/2)
    std::vector<double> gains;  // this filter's exact gain at those shifts
    double gain_at_target = 0.0;
};

// First entry is the audited filter itself, then one entry per neighboring
// filter at the same (k, nu).  Neighbors must be odd integers > 1.
std::vector<AuditEntry> attenuation_audit(const FilterSpec& spec,
                                          std::span<const int> neighbors);

std::string audit_to_json(std::span<const AuditEntry> entries);
std::string audit_to_csv(std::span<const AuditEntry> entries);

} // namespace ekzft
