#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekzft/errors.hpp"
#include "ekzft/sim_harness.hpp"
#include "ekzft/spectral_analysis.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace ekzft;

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

TEST_CASE("closed-form gain at landmark shifts") {
    CHECK(closed_form_gain(7.0, 1, 0.0) == 1.0);
    CHECK(closed_form_gain(7.0, 3, 0.0) == 1.0);
    CHECK(closed_form_gain(7.0, 1, 1.0 / 7.0) < 1e-20);
    // sin(7*pi/8) = sin(pi/8), so the ratio is exactly 1/7.
    CHECK(closed_form_gain(7.0, 1, 0.125) == doctest::Approx(1.0 / 49.0).epsilon(1e-12));
    // sin(9*pi/8) = -sin(pi/8), ratio -1/9.
    CHECK(closed_form_gain(9.0, 1, 0.125) == doctest::Approx(1.0 / 81.0).epsilon(1e-12));
}

TEST_CASE("exact gain vanishes at the harmonics of an even window") {
    const CoefficientTable table = coefficient_table(8.0, 1);
    for (const double shift : {0.125, 0.25, 0.375, 0.5}) {
        CAPTURE(shift);
        CHECK(exact_gain(table, shift) < 1e-20);
    }
}

TEST_CASE("exact gain of the fractional window is small but positive at 1/m_r") {
    const CoefficientTable table = coefficient_table(2.5, 1);
    const double expected = std::pow((1.0 + 1.5 * std::cos(0.8 * kPi)) / 2.5, 2.0);
    const double gain = exact_gain(table, 0.4);
    CHECK(gain == doctest::Approx(expected).epsilon(1e-12));
    CHECK(gain > 0.0);
    CHECK(gain < 0.02);
}

TEST_CASE("incomplete suppression for non-integer windows") {
    for (const double m : {2.5, kPi, 7.5}) {
        CAPTURE(m);
        const CoefficientTable table = coefficient_table(m, 1);
        const double gain = exact_gain(table, 1.0 / m);
        CHECK(gain > 0.0);
        CHECK(gain < 0.02);
    }
}

TEST_CASE("complete suppression at j/m_r for integer windows, even and odd") {
    for (int m = 2; m <= 12; ++m) {
        for (int k = 1; k <= 2; ++k) {
            CAPTURE(m);
            CAPTURE(k);
            const CoefficientTable table = coefficient_table(static_cast<double>(m), k);
            for (int j = 1; 2 * j <= m; ++j) {
                const double shift = static_cast<double>(j) / static_cast<double>(m);
                CHECK(exact_gain(table, shift) < 1e-20);
            }
        }
    }
}

TEST_CASE("exact and closed-form transfers agree for odd windows") {
    const std::vector<double> grid = uniform_shift_grid(1000);
    for (const int m : {3, 5, 7, 9}) {
        for (const int k : {1, 2, 3}) {
            CAPTURE(m);
            CAPTURE(k);
            const FilterSpec spec = make_filter_spec(static_cast<double>(m), k, 0.25);
            const TransferCurve exact = transfer_exact(spec, grid);
            const TransferCurve closed = transfer_closed(spec, grid);
            double worst = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                worst = std::max(worst, std::abs(exact.gains[i] - closed.gains[i]));
            CHECK(worst < 1e-12);
        }
    }
}

TEST_CASE("iterating sharpens the attenuation everywhere inside (0,1)") {
    const std::vector<double> grid = uniform_shift_grid(2001);
    for (const double shift : grid) {
        const double base = closed_form_gain(7.0, 1, shift);
        if (base <= 0.0 || base >= 1.0)
            continue;
        double prev = base;
        for (int k = 2; k <= 6; ++k) {
            const double next = closed_form_gain(7.0, k, shift);
            CHECK(next < prev);
            prev = next;
        }
    }
}

TEST_CASE("half-power shift values") {
    const double hp1 = half_power_shift(7.0, 1);
    CHECK(hp1 == doctest::Approx(0.0607).epsilon(1e-3));
    CHECK(closed_form_gain(7.0, 1, hp1) == doctest::Approx(0.5368).epsilon(1e-3));

    const double hp6 = half_power_shift(7.0, 6);
    CHECK(hp6 == doctest::Approx(0.0266).epsilon(2e-3));
    CHECK(closed_form_gain(7.0, 6, hp6) == doctest::Approx(0.506).epsilon(2e-3));
}

TEST_CASE("half-power shift scales inversely with the window") {
    for (const int k : {1, 3, 6}) {
        const double ratio = half_power_shift(7.0, k) / half_power_shift(14.0, k);
        CHECK(ratio == doctest::Approx(2.0).epsilon(0.02));
    }
}

TEST_CASE("exact transfer at the half-power shift is close to one half") {
    for (const double m : {5.0, 6.0, 7.0, 7.5, 9.0, 12.0}) {
        for (int k = 1; k <= 6; ++k) {
            CAPTURE(m);
            CAPTURE(k);
            const CoefficientTable table = coefficient_table(m, k);
            const double gain = exact_gain(table, half_power_shift(m, k));
            CHECK(gain >= 0.45);
            CHECK(gain <= 0.55);
        }
    }
}

TEST_CASE("uniform shift grid") {
    const std::vector<double> grid = uniform_shift_grid(2001);
    REQUIRE(grid.size() == 2001);
    CHECK(grid.front() == -0.5);
    CHECK(grid.back() == 0.5);
    CHECK(grid[1000] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(uniform_shift_grid(1), DomainError);
}

TEST_CASE("log gains clamp true zeros") {
    const FilterSpec spec = make_filter_spec(8.0, 1, 0.25);
    const std::vector<double> shifts{0.0, 0.125};
    TransferCurve curve = transfer_exact(spec, shifts);
    add_log_gains(curve);
    REQUIRE(curve.log_gains.size() == 2);
    CHECK(curve.log_gains[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(curve.log_gains[1] >= std::log(1e-300));
    CHECK(std::isfinite(curve.log_gains[1]));
}

TEST_CASE("transfer curve rejects bad grids") {
    const FilterSpec spec = make_filter_spec(7.0, 1, 0.0);
    CHECK_THROWS_AS(transfer_exact(spec, std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(transfer_exact(spec, std::vector<double>{0.1, 0.1}), DomainError);
    CHECK_THROWS_AS(transfer_exact(spec, std::vector<double>{0.2, 0.1}), DomainError);
}

TEST_CASE("transfer curve serializes to json") {
    const FilterSpec spec = make_filter_spec(2.5, 2, 0.2);
    TransferCurve curve = transfer_exact(spec, std::vector<double>{-0.1, 0.0, 0.1});
    add_log_gains(curve);
    const nlohmann::json j = nlohmann::json::parse(curve.to_json());
    CHECK(j["spec"]["window"].get<double>() == 2.5);
    CHECK(j["kind"].get<std::string>() == "exact");
    CHECK(j["gains"].get<std::vector<double>>() == curve.gains);
    CHECK(j["log_gains"].get<std::vector<double>>() == curve.log_gains);
}

TEST_CASE("periodogram of zeros and of a unit impulse") {
    const RealSeries zeros(std::vector<double>(32, 0.0));
    for (double p : periodogram(zeros).power)
        CHECK(p == 0.0);

    for (const std::size_t n : {16u, 17u}) {
        std::vector<double> impulse(n, 0.0);
        impulse[3] = 1.0;
        const PeriodogramCurve curve = periodogram(RealSeries(impulse));
        REQUIRE(curve.frequencies.size() == n / 2 + 1);
        for (double p : curve.power)
            CHECK(p == doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-14));
    }
}

TEST_CASE("periodogram frequencies are j/n") {
    const PeriodogramCurve curve = periodogram(white_noise(10, 1.0, 4));
    REQUIRE(curve.frequencies.size() == 6);
    for (std::size_t j = 0; j < 6; ++j)
        CHECK(curve.frequencies[j] == doctest::Approx(j / 10.0).epsilon(1e-15));
}

TEST_CASE("two-sided periodogram accounting satisfies Parseval") {
    for (const std::size_t n : {64u, 65u}) {
        const RealSeries x = white_noise(n, 1.3, 12345);
        const PeriodogramCurve curve = periodogram(x);
        double total = curve.power[0];
        const std::size_t half = n / 2;
        for (std::size_t j = 1; j < curve.power.size(); ++j) {
            const bool self_conjugate = (n % 2 == 0) && j == half;
            total += self_conjugate ? curve.power[j] : 2.0 * curve.power[j];
        }
        double energy = 0.0;
        for (double v : x.values)
            energy += v * v;
        CHECK(total == doctest::Approx(energy).epsilon(1e-9));
    }
}

TEST_CASE("periodogram of a complex tone concentrates at its frequency bin") {
    const std::size_t n = 16;
    ComplexSeries x;
    x.values.resize(n);
    x.missing.assign(n, 0);
    for (std::size_t t = 0; t < n; ++t)
        x.values[t] = std::polar(1.0, 2.0 * kPi * 0.25 * static_cast<double>(t));
    const PeriodogramCurve curve = periodogram(x);
    for (std::size_t j = 0; j < curve.power.size(); ++j) {
        if (j == 4)
            CHECK(curve.power[j] == doctest::Approx(16.0).epsilon(1e-12));
        else
            CHECK(curve.power[j] < 1e-24);
    }
}

TEST_CASE("periodogram rejects filter output that still has missing edges") {
    const RealSeries x = white_noise(64, 1.0, 9);
    const ComplexSeries marked = apply_direct(x, make_filter_spec(5.0, 1, 0.2));
    CHECK_THROWS_AS(periodogram(marked), DataError);
    const ComplexSeries dropped =
        apply_direct(x, make_filter_spec(5.0, 1, 0.2), EdgePolicy::drop);
    CHECK_NOTHROW(periodogram(dropped));
}

TEST_CASE("periodogram rejects unusable input") {
    CHECK_THROWS_AS(periodogram(RealSeries(std::vector<double>{1.0})), DataError);
    RealSeries x(std::vector<double>(8, 1.0));
    x.missing[2] = 1;
    CHECK_THROWS_AS(periodogram(x), DataError);
    RealSeries y(std::vector<double>(8, 1.0));
    y.values[1] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(periodogram(y), DataError);
}

TEST_CASE("mean periodogram of white noise is flat at sigma squared") {
    // Monte-Carlo oracle over pinned substreams.  At 8000 averaged replicates
    // the per-bin standard error is ~1.1%, so a +-5% band over all 251 bins
    // holds with margin to spare.
    const std::size_t n = 500;
    const int replicates = 8000;
    std::vector<double> acc(n / 2 + 1, 0.0);
    for (int r = 1; r <= replicates; ++r) {
        const RealSeries x = white_noise(n, 1.0, substream_seed(555, static_cast<std::uint64_t>(r)));
        const PeriodogramCurve curve = periodogram(x);
        for (std::size_t j = 0; j < acc.size(); ++j)
            acc[j] += curve.power[j];
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < acc.size(); ++j)
        worst = std::max(worst, std::abs(acc[j] / replicates - 1.0));
    CHECK(worst < 0.05);
}
