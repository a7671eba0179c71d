#include "ekzft/window_algebra.hpp"

#include "ekzft/errors.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

namespace ekzft {

WindowDecomposition decompose_window(double length) {
    if (!std::isfinite(length) || !(length > 1.0))
        throw DomainError("window length must be a finite real greater than one");
    if (length >= 1e9)
        throw DomainError("window length too large");

    int base = static_cast<int>(std::floor(length));
    if (base % 2 == 0)
        --base;
    // base is the greatest odd integer <= length, so the excess is in [0, 2)
    // and vanishes exactly for odd integer lengths.
    return WindowDecomposition{length, base, length - static_cast<double>(base)};
}

double CoefficientTable::sum() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

std::string CoefficientTable::to_json() const {
    nlohmann::json j;
    j["m_r"] = window.length;
    j["k"] = iterations;
    j["half_support"] = half_support();
    j["weights"] = weights;
    return j.dump();
}

CoefficientTable base_polynomial(const WindowDecomposition& window) {
    std::vector<double> weights;
    if (window.excess == 0.0) {
        weights.assign(static_cast<std::size_t>(window.odd_base), 1.0);
    } else {
        weights.reserve(static_cast<std::size_t>(window.odd_base) + 2);
        weights.push_back(window.excess / 2.0);
        weights.insert(weights.end(), static_cast<std::size_t>(window.odd_base), 1.0);
        weights.push_back(window.excess / 2.0);
    }
    return CoefficientTable{window, 1, std::move(weights)};
}

namespace {

void require_symmetric(std::span<const double> w, const char* side) {
    for (std::size_t i = 0; i < w.size() / 2; ++i)
        if (w[i] != w[w.size() - 1 - i])
            throw DomainError(std::string("convolve: ") + side + " weights are not symmetric");
}

} // namespace

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw DomainError("convolve: empty input");
    require_symmetric(a, "left");
    require_symmetric(b, "right");
    const std::size_t out_len = a.size() + b.size() - 1;
    std::vector<double> out(out_len);
    // Inputs are symmetric, so only the lower half is summed; mirroring the
    // result keeps the output symmetric to the bit.
    for (std::size_t m = 0; m <= (out_len - 1) / 2; ++m) {
        const std::size_t i_lo = m + 1 >= b.size() ? m + 1 - b.size() : 0;
        const std::size_t i_hi = std::min(m, a.size() - 1);
        double acc = 0.0;
        for (std::size_t i = i_lo; i <= i_hi; ++i)
            acc += a[i] * b[m - i];
        out[m] = acc;
        out[out_len - 1 - m] = acc;
    }
    return out;
}

CoefficientTable coefficient_table(const WindowDecomposition& window, int iterations) {
    if (iterations < 1)
        throw DomainError("iterations must be a positive integer");
    CoefficientTable base = base_polynomial(window);
    std::vector<double> weights = base.weights;
    for (int pass = 1; pass < iterations; ++pass)
        weights = convolve(weights, base.weights);
    return CoefficientTable{window, iterations, std::move(weights)};
}

CoefficientTable coefficient_table(double length, int iterations) {
    return coefficient_table(decompose_window(length), iterations);
}

} // namespace ekzft
