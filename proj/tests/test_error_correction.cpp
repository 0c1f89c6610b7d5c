#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "greycast/error_correction.hpp"
#include "greycast/errors.hpp"
#include "support.hpp"

using namespace greycast;
using greycast::testing::Gen;

namespace {

std::vector<double> fitted_values(const FourierResidualModel& m, std::size_t len) {
    std::vector<double> out;
    for (std::size_t k = 1; k <= len; ++k) out.push_back(extrapolate_error(m, static_cast<double>(k)));
    return out;
}

double in_sample_rmse(const std::vector<double>& r, const FourierResidualModel& m) {
    const auto fit = fitted_values(m, r.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) sum += (r[i] - fit[i]) * (r[i] - fit[i]);
    return std::sqrt(sum / static_cast<double>(r.size()));
}

}  // namespace

TEST(MaxHarmonics, Cap) {
    EXPECT_EQ(max_harmonics(1), 0u);
    EXPECT_EQ(max_harmonics(3), 0u);
    EXPECT_EQ(max_harmonics(4), 0u);
    EXPECT_EQ(max_harmonics(5), 1u);
    EXPECT_EQ(max_harmonics(12), 4u);
    EXPECT_EQ(max_harmonics(24), 10u);
    for (std::size_t len = 1; len < 100; ++len) EXPECT_LE(1 + 2 * max_harmonics(len), std::max<std::size_t>(len, 1));
}

TEST(FitFourier, ZeroResiduals) {
    const auto m = fit_residual_fourier(std::vector<double>{0, 0, 0});
    EXPECT_EQ(m.a0, 0.0);
    EXPECT_EQ(m.harmonic_count(), 0u);
    EXPECT_EQ(extrapolate_error(m, 7), 0.0);
    EXPECT_EQ(m.period, 2.0);
}

TEST(FitFourier, ConstantResiduals) {
    const auto m = fit_residual_fourier(std::vector<double>{1, 1, 1, 1});
    EXPECT_DOUBLE_EQ(m.a0 / 2, 1.0);
    const auto wide = fit_residual_fourier(std::vector<double>(12, 1.0));
    EXPECT_NEAR(wide.a0 / 2, 1.0, 1e-12);
    for (const auto& [a, b] : wide.harmonics) {
        EXPECT_NEAR(a, 0.0, 1e-12);
        EXPECT_NEAR(b, 0.0, 1e-12);
    }
}

TEST(FitFourier, SingleResidual) {
    const auto m = fit_residual_fourier(std::vector<double>{2.5});
    EXPECT_EQ(m.period, 1.0);
    EXPECT_EQ(extrapolate_error(m, 2), 2.5);
    EXPECT_THROW(fit_residual_fourier(std::vector<double>{}), InsufficientData);
}

TEST(FitFourier, RecoversOwnBasis) {
    const std::size_t len = 12;
    const double period = 11.0;
    std::vector<double> r;
    for (std::size_t k = 1; k <= len; ++k) r.push_back(0.5 * std::cos(2 * std::numbers::pi * k / period));
    const auto m = fit_residual_fourier(r);
    ASSERT_EQ(m.harmonic_count(), 4u);
    EXPECT_EQ(m.period, period);
    EXPECT_NEAR(m.harmonics[0].first, 0.5, 1e-9);
    EXPECT_NEAR(m.a0, 0.0, 1e-9);
    EXPECT_NEAR(m.harmonics[0].second, 0.0, 1e-9);
    for (std::size_t i = 1; i < m.harmonics.size(); ++i) {
        EXPECT_NEAR(m.harmonics[i].first, 0.0, 1e-9);
        EXPECT_NEAR(m.harmonics[i].second, 0.0, 1e-9);
    }
    EXPECT_NEAR(extrapolate_error(m, 13), 0.5 * std::cos(2 * std::numbers::pi * 13 / period), 1e-9);
}

TEST(FitFourier, NormalEquationOracle) {
    Gen gen(41);
    const auto r = gen.vector(15, -2, 2);
    const std::size_t f = max_harmonics(r.size());
    const double period = 14.0;
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 1; k <= r.size(); ++k) {
        std::vector<double> row{0.5};
        for (std::size_t i = 1; i <= f; ++i) {
            const double angle = 2 * std::numbers::pi * static_cast<double>(i * k) / period;
            row.push_back(std::cos(angle));
            row.push_back(std::sin(angle));
        }
        rows.push_back(row);
    }
    const auto oracle = greycast::testing::normal_equations(rows, r);
    const auto m = fit_residual_fourier(r);
    EXPECT_NEAR(m.a0, oracle[0], 1e-9);
    for (std::size_t i = 0; i < f; ++i) {
        EXPECT_NEAR(m.harmonics[i].first, oracle[1 + 2 * i], 1e-9);
        EXPECT_NEAR(m.harmonics[i].second, oracle[2 + 2 * i], 1e-9);
    }
}

TEST(FitFourier, ZeroHarmonicsIsExactMean) {
    Gen gen(42);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = gen.vector(static_cast<std::size_t>(gen.integer(1, 40)), -5, 5);
        double sum = 0.0;
        for (double v : r) sum += v;
        const auto m = fit_residual_fourier(r, 0);
        EXPECT_EQ(extrapolate_error(m, 99), sum / static_cast<double>(r.size()));
    }
}

TEST(FitFourier, InSampleRmseNonIncreasingInF) {
    Gen gen(43);
    for (int trial = 0; trial < 100; ++trial) {
        const auto r = gen.vector(24, -3, 3);
        double previous = std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f <= max_harmonics(r.size()); ++f) {
            const double e = in_sample_rmse(r, fit_residual_fourier(r, f));
            EXPECT_LE(e, previous + 1e-12);
            previous = e;
        }
    }
}

TEST(CorrectedForecast, Identity) {
    const FourierResidualModel zero;
    EXPECT_EQ(corrected_forecast(5.0, zero, 3), 5.0);
    const auto mean_one = fit_residual_fourier(std::vector<double>{1, 1, 1}, 0);
    EXPECT_EQ(corrected_forecast(5.0, mean_one, 4), 6.0);
    EXPECT_THROW(corrected_forecast(std::nan(""), zero, 1), InvalidInput);
}

TEST(CorrectedForecast, ZeroModelIsBitExact) {
    Gen gen(44);
    const auto zero_fit = fit_residual_fourier(std::vector<double>(24, 0.0));
    for (int trial = 0; trial < 100; ++trial) {
        const double raw = gen.uniform(-1e6, 1e6);
        EXPECT_EQ(corrected_forecast(raw, zero_fit, gen.integer(1, 50)), raw);
    }
}

TEST(CorrectedForecast, InterpolatesWhenExactlyDetermined) {
    // len = 2F + 1 with F at the cap would need F = floor((len-1)/2) - 1, so
    // take an explicit F that makes the system square.
    Gen gen(45);
    const std::size_t f = 3;
    const auto r = gen.vector(2 * f + 1, -1, 1);
    const auto m = fit_residual_fourier(r, f);
    const double raw = 10.0;
    for (std::size_t k = 1; k <= r.size(); ++k) {
        EXPECT_NEAR(corrected_forecast(raw, m, static_cast<double>(k)), raw + r[k - 1], 1e-9);
    }
}

TEST(ResidualBuffer, RingAndCorrection) {
    ResidualBuffer buffer(3);
    EXPECT_TRUE(buffer.empty());
    EXPECT_FALSE(buffer.next_correction());
    for (double v : {1.0, 2.0, 3.0, 4.0}) buffer.push(v);
    EXPECT_EQ(buffer.size(), 3u);
    EXPECT_EQ(buffer.snapshot(), (std::vector<double>{2, 3, 4}));
    EXPECT_DOUBLE_EQ(*buffer.next_correction(), 3.0);
    EXPECT_THROW(ResidualBuffer(0), InvalidInput);
}

TEST(ResidualBuffer, ContinuesOwnIndexing) {
    Gen gen(46);
    ResidualBuffer buffer(24);
    for (int i = 0; i < 30; ++i) buffer.push(gen.uniform(-1, 1));
    const auto snap = buffer.snapshot();
    const auto m = fit_residual_fourier(snap);
    EXPECT_EQ(*buffer.next_correction(), extrapolate_error(m, 25.0));
}
