#pragma once

#include <complex>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace ekzft {

// Uniformly spaced real observations.  start_offset is the time index of
// values[0] on the original axis; it becomes nonzero after a filter drops
// edge positions.  Positions flagged in `missing` carry no numeric claim
// (they hold NaN) and appear only at the edges of filter outputs.
struct RealSeries {
    std::vector<double> values;
    std::vector<std::uint8_t> missing; // same length as values, 1 = missing
    std::int64_t start_offset = 0;

    RealSeries() = default;
    explicit RealSeries(std::vector<double> v)
        : values(std::move(v)), missing(values.size(), 0) {}

    std::size_t size() const { return values.size(); }
    bool is_missing(std::size_t i) const;
    bool any_missing() const;
    // Indices of the first/last non-missing position; size() if all missing.
    std::size_t interior_begin() const;
    std::size_t interior_end() const; // one past the last
};

// Complex-valued counterpart; band-pass filter outputs live here.
struct ComplexSeries {
    std::vector<std::complex<double>> values;
    std::vector<std::uint8_t> missing;
    std::int64_t start_offset = 0;

    ComplexSeries() = default;
    explicit ComplexSeries(std::vector<std::complex<double>> v)
        : values(std::move(v)), missing(values.size(), 0) {}

    std::size_t size() const { return values.size(); }
    bool is_missing(std::size_t i) const;
    bool any_missing() const;
    std::size_t interior_begin() const;
    std::size_t interior_end() const;
};

} // namespace ekzft
