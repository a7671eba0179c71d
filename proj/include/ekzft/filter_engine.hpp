#pragma once

#include "ekzft/series.hpp"
#include "ekzft/window_algebra.hpp"

namespace ekzft {

// What happens to the leading/trailing positions where the full filter
// window does not fit: keep them in place flagged missing, or drop them and
// record the start offset of the shortened interior.  Partial windows are
// never evaluated; renormalizing them would change the transfer function
// near the edges.
enum class EdgePolicy { mark_missing, drop };

// One band-pass filter: window length (possibly fractional), number of
// iterations k, and band center frequency in cycles per unit time.
struct FilterSpec {
    WindowDecomposition window;
    int iterations = 1;     // k >= 1
    double frequency = 0.0; // nu in [0, 0.5)
};

// Validates and builds a spec; throws DomainError on out-of-range arguments.
FilterSpec make_filter_spec(double window_length, int iterations, double frequency);
void validate_spec(const FilterSpec& spec);

// Band-pass transform: at each interior t,
//   out(t) = (1 / m_r^k) * sum_s a_s * exp(-i*2*pi*nu*s) * x(t+s)
// over the full table support s = -h..+h.  The output is complex and still
// oscillates at the input frequency (no demodulation to baseband).
// Throws DataError when the series is shorter than the support allows or
// contains missing/non-finite values.
ComplexSeries apply_direct(const RealSeries& x, const FilterSpec& spec,
                           EdgePolicy edges = EdgePolicy::mark_missing);
ComplexSeries apply_direct(const ComplexSeries& x, const FilterSpec& spec,
                           EdgePolicy edges = EdgePolicy::mark_missing);

// Same filter computed as k passes of the single-iteration form; interior
// values agree with apply_direct up to rounding.  The missing region grows
// by the single-pass half support with every pass.
ComplexSeries apply_iterated(const RealSeries& x, const FilterSpec& spec,
                             EdgePolicy edges = EdgePolicy::mark_missing);
ComplexSeries apply_iterated(const ComplexSeries& x, const FilterSpec& spec,
                             EdgePolicy edges = EdgePolicy::mark_missing);

// The nu = 0 special case: an iterated centered moving average.  Equals the
// real part of apply_direct at frequency zero; the imaginary part vanishes
// identically for real input.
RealSeries apply_lowpass(const RealSeries& x, double window_length, int iterations,
                         EdgePolicy edges = EdgePolicy::mark_missing);

// Real band-passed signal from a filter output: 2*Re(z) for 0 < nu < 0.5,
// Re(z) for nu = 0.  Missing positions and the start offset propagate.
// The frequency must match the one the filter ran with; a mismatch is not
// detectable here and is the caller's responsibility.
RealSeries reconstruct_band(const ComplexSeries& z, double frequency);

} // namespace ekzft
