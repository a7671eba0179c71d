#include "ekzft/filter_engine.hpp"

#include "ekzft/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ekzft {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Phase-weighted taps c_s = w_s * exp(-i*2*pi*nu*s) / norm, stored as parallel
// real/imaginary arrays; tap index i corresponds to step s = i - h.
struct Taps {
    std::vector<double> re;
    std::vector<double> im;
    int half = 0;
};

Taps make_taps(const std::vector<double>& weights, double frequency, double norm) {
    Taps taps;
    taps.half = static_cast<int>(weights.size() / 2);
    taps.re.resize(weights.size());
    taps.im.resize(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double step = static_cast<double>(static_cast<int>(i) - taps.half);
        const double phase = -2.0 * std::numbers::pi * frequency * step;
        taps.re[i] = weights[i] * std::cos(phase) / norm;
        taps.im[i] = weights[i] * std::sin(phase) / norm;
    }
    return taps;
}

void require_clean(const RealSeries& x) {
    if (x.size() == 0)
        throw DataError("input series is empty");
    if (x.any_missing())
        throw DataError("input series has missing values");
    for (double v : x.values)
        if (!std::isfinite(v))
            throw DataError("input series has non-finite values");
}

void require_clean(const ComplexSeries& x) {
    if (x.size() == 0)
        throw DataError("input series is empty");
    if (x.any_missing())
        throw DataError("input series has missing values");
    for (const auto& v : x.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DataError("input series has non-finite values");
}

void require_length(std::size_t n, int half_support) {
    // At least one interior point must exist for the full window.
    if (n < 2 * static_cast<std::size_t>(half_support) + 1)
        throw DataError("series too short for the filter support");
}

ComplexSeries materialize(std::vector<std::complex<double>>&& full, std::size_t n,
                          std::size_t margin, std::int64_t in_offset, EdgePolicy edges) {
    ComplexSeries out;
    if (edges == EdgePolicy::drop) {
        out.values.assign(full.begin() + static_cast<std::ptrdiff_t>(margin),
                          full.begin() + static_cast<std::ptrdiff_t>(n - margin));
        out.missing.assign(out.values.size(), 0);
        out.start_offset = in_offset + static_cast<std::int64_t>(margin);
    } else {
        out.values = std::move(full);
        out.missing.assign(n, 0);
        for (std::size_t i = 0; i < margin; ++i) {
            out.values[i] = {kNan, kNan};
            out.values[n - 1 - i] = {kNan, kNan};
            out.missing[i] = 1;
            out.missing[n - 1 - i] = 1;
        }
        out.start_offset = in_offset;
    }
    return out;
}

// One full-support pass over real data.
void pass_real(const std::vector<double>& x, const Taps& taps,
               std::vector<std::complex<double>>& out, std::size_t lo, std::size_t hi) {
    const std::size_t width = taps.re.size();
    const std::size_t h = static_cast<std::size_t>(taps.half);
    for (std::size_t t = lo; t <= hi; ++t) {
        const double* base = x.data() + (t - h);
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (std::size_t i = 0; i < width; ++i) {
            acc_re += taps.re[i] * base[i];
            acc_im += taps.im[i] * base[i];
        }
        out[t] = {acc_re, acc_im};
    }
}

// One full-support pass over complex data.
void pass_complex(const std::vector<std::complex<double>>& x, const Taps& taps,
                  std::vector<std::complex<double>>& out, std::size_t lo, std::size_t hi) {
    const std::size_t width = taps.re.size();
    const std::size_t h = static_cast<std::size_t>(taps.half);
    for (std::size_t t = lo; t <= hi; ++t) {
        const std::complex<double>* base = x.data() + (t - h);
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (std::size_t i = 0; i < width; ++i) {
            const double xr = base[i].real();
            const double xi = base[i].imag();
            acc_re += taps.re[i] * xr - taps.im[i] * xi;
            acc_im += taps.re[i] * xi + taps.im[i] * xr;
        }
        out[t] = {acc_re, acc_im};
    }
}

template <typename Series, typename PassFn>
ComplexSeries direct_impl(const Series& x, const FilterSpec& spec, EdgePolicy edges,
                          PassFn&& pass) {
    validate_spec(spec);
    require_clean(x);
    const CoefficientTable table = coefficient_table(spec.window, spec.iterations);
    const int h = table.half_support();
    const std::size_t n = x.size();
    require_length(n, h);

    const double norm = std::pow(spec.window.length, spec.iterations);
    const Taps taps = make_taps(table.weights, spec.frequency, norm);

    std::vector<std::complex<double>> full(n, {kNan, kNan});
    pass(x.values, taps, full, static_cast<std::size_t>(h), n - 1 - static_cast<std::size_t>(h));
    return materialize(std::move(full), n, static_cast<std::size_t>(h), x.start_offset, edges);
}

template <typename Series>
ComplexSeries iterated_impl(const Series& x, const FilterSpec& spec, EdgePolicy edges) {
    validate_spec(spec);
    require_clean(x);
    const CoefficientTable base = base_polynomial(spec.window);
    const int h1 = base.half_support();
    const std::size_t n = x.size();
    const std::size_t margin = static_cast<std::size_t>(spec.iterations) *
                               static_cast<std::size_t>(h1);
    if (n < 2 * margin + 1)
        throw DataError("series too short for the filter support");

    const Taps taps = make_taps(base.weights, spec.frequency, spec.window.length);

    std::vector<std::complex<double>> cur(n);
    for (std::size_t i = 0; i < n; ++i)
        cur[i] = x.values[i];
    std::vector<std::complex<double>> next(n, {kNan, kNan});

    std::size_t lo = 0;
    std::size_t hi = n - 1;
    for (int pass = 0; pass < spec.iterations; ++pass) {
        lo += static_cast<std::size_t>(h1);
        hi -= static_cast<std::size_t>(h1);
        pass_complex(cur, taps, next, lo, hi);
        std::swap(cur, next);
    }
    for (std::size_t i = 0; i < margin; ++i) {
        cur[i] = {kNan, kNan};
        cur[n - 1 - i] = {kNan, kNan};
    }
    return materialize(std::move(cur), n, margin, x.start_offset, edges);
}

} // namespace

FilterSpec make_filter_spec(double window_length, int iterations, double frequency) {
    FilterSpec spec{decompose_window(window_length), iterations, frequency};
    validate_spec(spec);
    return spec;
}

void validate_spec(const FilterSpec& spec) {
    if (!std::isfinite(spec.window.length) || !(spec.window.length > 1.0))
        throw DomainError("window length must be a finite real greater than one");
    if (spec.window.odd_base < 1 || spec.window.odd_base % 2 == 0 ||
        spec.window.excess < 0.0 || spec.window.excess >= 2.0 ||
        spec.window.odd_base + spec.window.excess != spec.window.length)
        throw DomainError("inconsistent window decomposition");
    if (spec.iterations < 1)
        throw DomainError("iterations must be a positive integer");
    if (!std::isfinite(spec.frequency) || spec.frequency < 0.0 || spec.frequency >= 0.5)
        throw DomainError("frequency must lie in [0, 0.5)");
}

ComplexSeries apply_direct(const RealSeries& x, const FilterSpec& spec, EdgePolicy edges) {
    return direct_impl(x, spec, edges,
                       [](const std::vector<double>& v, const Taps& t,
                          std::vector<std::complex<double>>& out, std::size_t lo,
                          std::size_t hi) { pass_real(v, t, out, lo, hi); });
}

ComplexSeries apply_direct(const ComplexSeries& x, const FilterSpec& spec, EdgePolicy edges) {
    return direct_impl(x, spec, edges,
                       [](const std::vector<std::complex<double>>& v, const Taps& t,
                          std::vector<std::complex<double>>& out, std::size_t lo,
                          std::size_t hi) { pass_complex(v, t, out, lo, hi); });
}

ComplexSeries apply_iterated(const RealSeries& x, const FilterSpec& spec, EdgePolicy edges) {
    return iterated_impl(x, spec, edges);
}

ComplexSeries apply_iterated(const ComplexSeries& x, const FilterSpec& spec, EdgePolicy edges) {
    return iterated_impl(x, spec, edges);
}

RealSeries apply_lowpass(const RealSeries& x, double window_length, int iterations,
                         EdgePolicy edges) {
    const FilterSpec spec = make_filter_spec(window_length, iterations, 0.0);
    validate_spec(spec);
    require_clean(x);
    const CoefficientTable table = coefficient_table(spec.window, spec.iterations);
    const int h = table.half_support();
    const std::size_t n = x.size();
    require_length(n, h);

    const double norm = std::pow(spec.window.length, spec.iterations);
    const std::size_t width = table.weights.size();
    std::vector<double> taps(width);
    for (std::size_t i = 0; i < width; ++i)
        taps[i] = table.weights[i] / norm;

    RealSeries out;
    const std::size_t margin = static_cast<std::size_t>(h);
    if (edges == EdgePolicy::drop) {
        out.values.resize(n - 2 * margin);
        out.missing.assign(out.values.size(), 0);
        out.start_offset = x.start_offset + static_cast<std::int64_t>(margin);
        for (std::size_t t = 0; t < out.values.size(); ++t) {
            const double* base = x.values.data() + t;
            double acc = 0.0;
            for (std::size_t i = 0; i < width; ++i)
                acc += taps[i] * base[i];
            out.values[t] = acc;
        }
    } else {
        out.values.assign(n, kNan);
        out.missing.assign(n, 0);
        out.start_offset = x.start_offset;
        for (std::size_t i = 0; i < margin; ++i) {
            out.missing[i] = 1;
            out.missing[n - 1 - i] = 1;
        }
        for (std::size_t t = margin; t + margin < n; ++t) {
            const double* base = x.values.data() + (t - margin);
            double acc = 0.0;
            for (std::size_t i = 0; i < width; ++i)
                acc += taps[i] * base[i];
            out.values[t] = acc;
        }
    }
    return out;
}

RealSeries reconstruct_band(const ComplexSeries& z, double frequency) {
    if (!std::isfinite(frequency) || frequency < 0.0 || frequency >= 0.5)
        throw DomainError("frequency must lie in [0, 0.5)");
    const double factor = frequency == 0.0 ? 1.0 : 2.0;
    RealSeries out;
    out.values.resize(z.size());
    out.missing = z.missing;
    out.start_offset = z.start_offset;
    for (std::size_t i = 0; i < z.size(); ++i)
        out.values[i] = z.is_missing(i) ? kNan : factor * z.values[i].real();
    return out;
}

} // namespace ekzft
