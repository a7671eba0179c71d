#include "ekzft/spectral_analysis.hpp"

#include "ekzft/errors.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

namespace ekzft {

namespace {

void require_grid(std::span<const double> shifts) {
    if (shifts.empty())
        throw DomainError("shift grid is empty");
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (!std::isfinite(shifts[i]))
            throw DomainError("shift grid has non-finite entries");
        if (i > 0 && !(shifts[i] > shifts[i - 1]))
            throw DomainError("shift grid must be strictly increasing");
    }
}

PeriodogramCurve periodogram_core(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (n < 2)
        throw DataError("periodogram requires at least two observations");

    // n-th roots of unity, w[r] = exp(-i*2*pi*r/n); the DFT phase for bin j
    // at time t is w[(j*t) mod n].
    std::vector<double> w_re(n);
    std::vector<double> w_im(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) /
                             static_cast<double>(n);
        w_re[r] = std::cos(angle);
        w_im[r] = std::sin(angle);
    }

    PeriodogramCurve curve;
    const std::size_t bins = n / 2 + 1;
    curve.frequencies.resize(bins);
    curve.power.resize(bins);
    for (std::size_t j = 0; j < bins; ++j) {
        double acc_re = 0.0;
        double acc_im = 0.0;
        std::size_t idx = 0;
        for (std::size_t t = 0; t < n; ++t) {
            const double xr = x[t].real();
            const double xi = x[t].imag();
            acc_re += xr * w_re[idx] - xi * w_im[idx];
            acc_im += xr * w_im[idx] + xi * w_re[idx];
            idx += j;
            if (idx >= n)
                idx -= n;
        }
        curve.frequencies[j] = static_cast<double>(j) / static_cast<double>(n);
        curve.power[j] = (acc_re * acc_re + acc_im * acc_im) / static_cast<double>(n);
    }
    return curve;
}

} // namespace

std::vector<double> uniform_shift_grid(std::size_t points, double lo, double hi) {
    if (points < 2)
        throw DomainError("shift grid needs at least two points");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("invalid shift grid bounds");
    std::vector<double> grid(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

double closed_form_gain(double window_length, int iterations, double shift) {
    // Removable singularity: the ratio tends to 1 as the shift tends to 0.
    if (std::abs(shift) < 1e-12)
        return 1.0;
    const double num = std::sin(std::numbers::pi * window_length * shift);
    const double den = window_length * std::sin(std::numbers::pi * shift);
    const double ratio = num / den;
    const double squared = ratio * ratio;
    double gain = 1.0;
    for (int i = 0; i < iterations; ++i)
        gain *= squared;
    return gain;
}

double exact_gain(const CoefficientTable& table, double shift) {
    const int h = table.half_support();
    const double norm = std::pow(table.window.length, table.iterations);
    double acc = table.weight(0);
    for (int s = 1; s <= h; ++s)
        acc += 2.0 * table.weight(s) *
               std::cos(2.0 * std::numbers::pi * shift * static_cast<double>(s));
    const double b = acc / norm;
    return b * b;
}

TransferCurve transfer_closed(const FilterSpec& spec, std::span<const double> shifts) {
    validate_spec(spec);
    require_grid(shifts);
    TransferCurve curve;
    curve.spec = spec;
    curve.kind = TransferKind::closed_form;
    curve.shifts.assign(shifts.begin(), shifts.end());
    curve.gains.resize(shifts.size());
    for (std::size_t i = 0; i < shifts.size(); ++i)
        curve.gains[i] = closed_form_gain(spec.window.length, spec.iterations, shifts[i]);
    return curve;
}

TransferCurve transfer_exact(const FilterSpec& spec, std::span<const double> shifts) {
    validate_spec(spec);
    require_grid(shifts);
    const CoefficientTable table = coefficient_table(spec.window, spec.iterations);
    TransferCurve curve;
    curve.spec = spec;
    curve.kind = TransferKind::exact;
    curve.shifts.assign(shifts.begin(), shifts.end());
    curve.gains.resize(shifts.size());
    for (std::size_t i = 0; i < shifts.size(); ++i)
        curve.gains[i] = exact_gain(table, shifts[i]);
    return curve;
}

void add_log_gains(TransferCurve& curve) {
    curve.log_gains.resize(curve.gains.size());
    for (std::size_t i = 0; i < curve.gains.size(); ++i)
        curve.log_gains[i] = std::log(std::max(curve.gains[i], 1e-300));
}

double half_power_shift(double window_length, int iterations) {
    if (!std::isfinite(window_length) || !(window_length > 1.0))
        throw DomainError("window length must be a finite real greater than one");
    if (iterations < 1)
        throw DomainError("iterations must be a positive integer");
    const double q = std::pow(0.5, 1.0 / (2.0 * static_cast<double>(iterations)));
    return (std::sqrt(6.0) / std::numbers::pi) *
           std::sqrt((1.0 - q) / (window_length * window_length - q));
}

double half_power_shift(const FilterSpec& spec) {
    validate_spec(spec);
    return half_power_shift(spec.window.length, spec.iterations);
}

PeriodogramCurve periodogram(const RealSeries& x) {
    if (x.any_missing())
        throw DataError("periodogram input has missing values");
    for (double v : x.values)
        if (!std::isfinite(v))
            throw DataError("periodogram input has non-finite values");
    std::vector<std::complex<double>> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = x.values[i];
    return periodogram_core(z);
}

PeriodogramCurve periodogram(const ComplexSeries& x) {
    if (x.any_missing())
        throw DataError("periodogram input has missing values");
    for (const auto& v : x.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DataError("periodogram input has non-finite values");
    return periodogram_core(x.values);
}

std::string TransferCurve::to_json() const {
    nlohmann::json j;
    j["spec"] = {{"window", spec.window.length},
                 {"iterations", spec.iterations},
                 {"frequency", spec.frequency}};
    j["kind"] = kind == TransferKind::exact ? "exact" : "closed_form";
    j["shifts"] = shifts;
    j["gains"] = gains;
    if (!log_gains.empty())
        j["log_gains"] = log_gains;
    return j.dump();
}

} // namespace ekzft
