#include "ekzft/series.hpp"

#include <algorithm>

namespace ekzft {

// A mask shorter than the series (typically empty) means the uncovered tail
// is present; only explicit 1 flags mark missing positions.

namespace {

bool any_flag(const std::vector<std::uint8_t>& flags) {
    return std::any_of(flags.begin(), flags.end(), [](std::uint8_t f) { return f != 0; });
}

std::size_t first_clear(const std::vector<std::uint8_t>& flags, std::size_t n) {
    std::size_t i = 0;
    while (i < n && i < flags.size() && flags[i] != 0)
        ++i;
    return i;
}

std::size_t last_clear_end(const std::vector<std::uint8_t>& flags, std::size_t n) {
    std::size_t i = n;
    while (i > 0 && i <= flags.size() && flags[i - 1] != 0)
        --i;
    return i;
}

} // namespace

bool RealSeries::any_missing() const { return any_flag(missing); }
bool RealSeries::is_missing(std::size_t i) const { return i < missing.size() && missing[i] != 0; }
std::size_t RealSeries::interior_begin() const { return first_clear(missing, size()); }
std::size_t RealSeries::interior_end() const { return last_clear_end(missing, size()); }

bool ComplexSeries::any_missing() const { return any_flag(missing); }
bool ComplexSeries::is_missing(std::size_t i) const { return i < missing.size() && missing[i] != 0; }
std::size_t ComplexSeries::interior_begin() const { return first_clear(missing, size()); }
std::size_t ComplexSeries::interior_end() const { return last_clear_end(missing, size()); }

} // namespace ekzft
