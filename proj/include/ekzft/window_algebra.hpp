#pragma once

#include <span>
#include <string>
#include <vector>

namespace ekzft {

// A real filter window length m_r split into its odd integer base m_o and
// the fractional excess m_d = m_r - m_o, with 0 <= m_d < 2.  m_d is zero
// exactly when m_r is an odd integer, in which case the filter reduces to
// the classic odd-window case.
struct WindowDecomposition {
    double length = 0.0; // m_r, > 1
    int odd_base = 0;    // m_o, greatest odd integer <= m_r
    double excess = 0.0; // m_d = m_r - m_o

    bool is_odd_integer() const { return excess == 0.0; }
};

// Throws DomainError unless length is a finite real > 1.
WindowDecomposition decompose_window(double length);

// Symmetric nonnegative filter weights a_s for s = -half_support()..+half_support().
// Generated as the k-fold self-convolution of the single-pass window, so the
// weights sum to length^k and taper toward the ends.
struct CoefficientTable {
    WindowDecomposition window;
    int iterations = 1;          // k
    std::vector<double> weights; // ordered a_{-h} .. a_{+h}, odd count

    int half_support() const { return static_cast<int>(weights.size() / 2); }
    double weight(int step) const { return weights[static_cast<std::size_t>(step + half_support())]; }
    double sum() const;

    // {"m_r": ..., "k": ..., "half_support": ..., "weights": [...]}
    std::string to_json() const;
};

// Single-pass weights {m_d/2, 1, ..., 1, m_d/2} with odd_base interior ones.
// When m_d = 0 the zero end weights are trimmed so the table is structurally
// identical to the odd-window one.
CoefficientTable base_polynomial(const WindowDecomposition& window);

// Plain discrete convolution; output length = a.size() + b.size() - 1.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

// k-fold self-convolution of base_polynomial(window).
CoefficientTable coefficient_table(const WindowDecomposition& window, int iterations);
CoefficientTable coefficient_table(double length, int iterations);

} // namespace ekzft
