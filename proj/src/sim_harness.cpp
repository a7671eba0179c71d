#include "ekzft/sim_harness.hpp"

#include "ekzft/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <json.hpp>

namespace ekzft {

namespace {

double to_unit(std::uint64_t bits) {
    // Top 53 bits as a uniform double in [0, 1).
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Comma-free so the label can sit in a CSV field unquoted.
std::string spec_label(const FilterSpec& spec) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s_m%.6g_k%d_v%.6g",
                  spec.window.is_odd_integer() ? "kzft" : "ekzft", spec.window.length,
                  spec.iterations, spec.frequency);
    return buf;
}

void validate_config(const ExperimentConfig& config) {
    validate_spec(config.spec);
    if (config.length < 64)
        throw DomainError("experiment length must be at least 64");
    if (config.replicates < 1)
        throw DomainError("replicates must be a positive integer");
    if (!std::isfinite(config.sigma) || !(config.sigma > 0.0))
        throw DomainError("sigma must be positive");
}

} // namespace

RealSeries white_noise(std::size_t n, double sigma, std::uint64_t seed) {
    if (n < 1)
        throw DomainError("noise length must be at least one");
    if (!std::isfinite(sigma) || !(sigma > 0.0))
        throw DomainError("sigma must be positive");

    std::mt19937_64 engine(seed);
    RealSeries out;
    out.values.resize(n);
    out.missing.assign(n, 0);
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = to_unit(engine());
        const double u2 = to_unit(engine());
        // Box-Muller; log1p keeps the argument away from log(0).
        const double radius = sigma * std::sqrt(-2.0 * std::log1p(-u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out.values[i] = radius * std::cos(angle);
        if (i + 1 < n)
            out.values[i + 1] = radius * std::sin(angle);
    }
    return out;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t replicate) {
    std::uint64_t z = seed + replicate * 0x9e3779b97f4a7c15ULL;
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

ExperimentReport run_band_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const CoefficientTable table = coefficient_table(config.spec.window, config.spec.iterations);
    const std::size_t margin = static_cast<std::size_t>(table.half_support());
    if (config.length < 2 * margin + 1)
        throw DataError("series too short for the filter support");
    const std::size_t filtered_length = config.length - 2 * margin;

    std::vector<double> raw_acc(config.length / 2 + 1, 0.0);
    std::vector<double> filtered_acc(filtered_length / 2 + 1, 0.0);

    // Fixed replicate order keeps the aggregation deterministic; each
    // replicate draws from its own substream, so the set of series does not
    // depend on evaluation order.
    for (int r = 1; r <= config.replicates; ++r) {
        const RealSeries x =
            white_noise(config.length, config.sigma,
                        substream_seed(config.seed, static_cast<std::uint64_t>(r)));
        const PeriodogramCurve raw = periodogram(x);
        const ComplexSeries filtered = apply_direct(x, config.spec, EdgePolicy::drop);
        const PeriodogramCurve filt = periodogram(filtered);
        for (std::size_t j = 0; j < raw_acc.size(); ++j)
            raw_acc[j] += raw.power[j];
        for (std::size_t j = 0; j < filtered_acc.size(); ++j)
            filtered_acc[j] += filt.power[j];
    }

    ExperimentReport report;
    report.config = config;
    report.filtered_length = filtered_length;

    report.raw_periodogram_mean.frequencies.resize(raw_acc.size());
    report.raw_periodogram_mean.power.resize(raw_acc.size());
    for (std::size_t j = 0; j < raw_acc.size(); ++j) {
        report.raw_periodogram_mean.frequencies[j] =
            static_cast<double>(j) / static_cast<double>(config.length);
        report.raw_periodogram_mean.power[j] = raw_acc[j] / config.replicates;
    }

    report.filtered_periodogram_mean.frequencies.resize(filtered_acc.size());
    report.filtered_periodogram_mean.power.resize(filtered_acc.size());
    for (std::size_t j = 0; j < filtered_acc.size(); ++j) {
        report.filtered_periodogram_mean.frequencies[j] =
            static_cast<double>(j) / static_cast<double>(filtered_length);
        report.filtered_periodogram_mean.power[j] = filtered_acc[j] / config.replicates;
    }

    // Theory: sigma^2-scaled exact transfer on the filtered bin grid,
    // expressed against the shift from the band center.
    const double sigma2 = config.sigma * config.sigma;
    report.theory_curve.spec = config.spec;
    report.theory_curve.kind = TransferKind::exact;
    report.theory_curve.shifts.resize(filtered_acc.size());
    report.theory_curve.gains.resize(filtered_acc.size());

    DeviationSummary dev;
    double dev_sum = 0.0;
    for (std::size_t j = 0; j < filtered_acc.size(); ++j) {
        const double shift =
            report.filtered_periodogram_mean.frequencies[j] - config.spec.frequency;
        const double gain = exact_gain(table, shift);
        report.theory_curve.shifts[j] = shift;
        report.theory_curve.gains[j] = sigma2 * gain;
        if (gain > dev.gain_threshold) {
            const double expected = sigma2 * gain;
            const double rel =
                std::abs(report.filtered_periodogram_mean.power[j] - expected) / expected;
            dev.max_relative = std::max(dev.max_relative, rel);
            dev_sum += rel;
            ++dev.bins;
        }
    }
    dev.mean_relative = dev.bins > 0 ? dev_sum / static_cast<double>(dev.bins) : 0.0;
    report.deviation_summary = dev;
    return report;
}

std::string ExperimentReport::to_json() const {
    nlohmann::json j;
    j["config"] = {{"length", config.length},
                   {"sigma", config.sigma},
                   {"seed", config.seed},
                   {"replicates", config.replicates},
                   {"spec",
                    {{"window", config.spec.window.length},
                     {"iterations", config.spec.iterations},
                     {"frequency", config.spec.frequency}}},
                   {"comparison_windows", config.comparison_windows}};
    j["filtered_length"] = filtered_length;
    j["deviation_summary"] = {{"max_relative", deviation_summary.max_relative},
                              {"mean_relative", deviation_summary.mean_relative},
                              {"bins", deviation_summary.bins},
                              {"gain_threshold", deviation_summary.gain_threshold}};
    return j.dump(2);
}

std::vector<AuditEntry> attenuation_audit(const FilterSpec& spec,
                                          std::span<const int> neighbors) {
    validate_spec(spec);
    for (int nb : neighbors)
        if (nb <= 1 || nb % 2 == 0)
            throw DomainError("audit neighbors must be odd integers greater than one");

    const double target_window = spec.window.length;
    const int harmonics = static_cast<int>(std::floor(target_window / 2.0));
    std::vector<double> shifts;
    shifts.reserve(static_cast<std::size_t>(harmonics));
    for (int harmonic = 1; harmonic <= harmonics; ++harmonic)
        shifts.push_back(static_cast<double>(harmonic) / target_window);
    const double target_shift = 1.0 / target_window;

    const auto make_entry = [&](const FilterSpec& f) {
        const CoefficientTable table = coefficient_table(f.window, f.iterations);
        AuditEntry entry;
        entry.label = spec_label(f);
        entry.window_length = f.window.length;
        entry.iterations = f.iterations;
        entry.frequency = f.frequency;
        entry.half_power = half_power_shift(f);
        entry.shifts = shifts;
        entry.gains.reserve(shifts.size());
        for (double shift : shifts)
            entry.gains.push_back(exact_gain(table, shift));
        entry.gain_at_target = exact_gain(table, target_shift);
        return entry;
    };

    std::vector<AuditEntry> entries;
    entries.reserve(neighbors.size() + 1);
    entries.push_back(make_entry(spec));
    for (int nb : neighbors)
        entries.push_back(make_entry(
            make_filter_spec(static_cast<double>(nb), spec.iterations, spec.frequency)));
    return entries;
}

std::string audit_to_json(std::span<const AuditEntry> entries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const AuditEntry& e : entries) {
        nlohmann::json j;
        j["label"] = e.label;
        j["window"] = e.window_length;
        j["iterations"] = e.iterations;
        j["frequency"] = e.frequency;
        j["half_power_shift"] = e.half_power;
        j["shifts"] = e.shifts;
        j["gains"] = e.gains;
        j["gain_at_target"] = e.gain_at_target;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::string audit_to_csv(std::span<const AuditEntry> entries) {
    std::string out = "label,window,iterations,frequency,half_power_shift,"
                      "target_shift,target_gain,shift,gain\n";
    char buf[256];
    for (const AuditEntry& e : entries) {
        const double target_shift = e.shifts.empty() ? 0.0 : e.shifts.front();
        if (e.shifts.empty()) {
            std::snprintf(buf, sizeof(buf), "%s,%.15g,%d,%.15g,%.15g,%.15g,%.15g,nan,nan\n",
                          e.label.c_str(), e.window_length, e.iterations, e.frequency,
                          e.half_power, target_shift, e.gain_at_target);
            out += buf;
        }
        for (std::size_t i = 0; i < e.shifts.size(); ++i) {
            std::snprintf(buf, sizeof(buf),
                          "%s,%.15g,%d,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n",
                          e.label.c_str(), e.window_length, e.iterations, e.frequency,
                          e.half_power, target_shift, e.gain_at_target, e.shifts[i],
                          e.gains[i]);
            out += buf;
        }
    }
    return out;
}

} // namespace ekzft
