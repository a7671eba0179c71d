#pragma once

#include "ekzft/filter_engine.hpp"
#include "ekzft/series.hpp"
#include "ekzft/window_algebra.hpp"

#include <span>
#include <string>
#include <vector>

namespace ekzft {

enum class TransferKind { exact, closed_form };

// Sampled energy transfer function: squared gain |B|^2 against the frequency
// shift (input frequency minus band center).
struct TransferCurve {
    std::vector<double> shifts;    // strictly increasing grid
    std::vector<double> gains;     // squared gain, >= 0, 1 at shift 0
    std::vector<double> log_gains; // empty unless requested; ln of clamped gain
    FilterSpec spec;
    TransferKind kind = TransferKind::exact;

    std::string to_json() const;
};

// Evenly spaced grid of `points` shifts covering [lo, hi]; defaults match
// the usual plotting range.
std::vector<double> uniform_shift_grid(std::size_t points = 2001,
                                       double lo = -0.5, double hi = 0.5);

// Closed-form gain (sin(pi*m_r*shift) / (m_r*sin(pi*shift)))^(2k), the exact
// transfer for odd integer windows and an approximation otherwise.  The
// removable singularity at shift 0 evaluates to 1 (guard band 1e-12).
double closed_form_gain(double window_length, int iterations, double shift);

// True squared gain of the generated weights:
//   |sum_s (a_s / m_r^k) * exp(-i*2*pi*shift*s)|^2
// evaluated by the symmetric cosine sum, so the result is exactly real.
double exact_gain(const CoefficientTable& table, double shift);

TransferCurve transfer_closed(const FilterSpec& spec, std::span<const double> shifts);
TransferCurve transfer_exact(const FilterSpec& spec, std::span<const double> shifts);

// Fills curve.log_gains, clamping gains at 1e-300 so true zeros keep a
// finite logarithm.
void add_log_gains(TransferCurve& curve);

// Frequency shift at which the closed-form transfer drops to one half:
//   (sqrt(6)/pi) * sqrt((1 - (1/2)^(1/2k)) / (m_r^2 - (1/2)^(1/2k)))
double half_power_shift(double window_length, int iterations);
double half_power_shift(const FilterSpec& spec);

// Squared-magnitude DFT at the Fourier frequencies j/n, j = 0..floor(n/2),
// scaled by 1/n so unit-variance white noise has mean power one.
struct PeriodogramCurve {
    std::vector<double> frequencies;
    std::vector<double> power;
};

// Rejects series with missing values (DataError); requires n >= 2.
PeriodogramCurve periodogram(const RealSeries& x);
PeriodogramCurve periodogram(const ComplexSeries& x);

} // namespace ekzft
