#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "greycast/errors.hpp"
#include "greycast/metrics.hpp"
#include "greycast/rolling.hpp"
#include "support.hpp"

using namespace greycast;
using greycast::testing::Gen;

namespace {

RollingConfig config_for(const std::string& model) {
    RollingConfig c;
    c.model = *parse_model(model);
    return c;
}

Series seasonal(std::uint64_t seed, std::size_t n, double sigma = 0.5) {
    Gen gen(seed);
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = std::max(0.0, 20 + 5 * std::sin(2 * std::numbers::pi * static_cast<double>(k + 1) / 12) + gen.normal(sigma));
    }
    return Series(std::move(v));
}

void expect_same_predictions(const ForecastTrace& a, const ForecastTrace& b) {
    ASSERT_EQ(a.predictions.size(), b.predictions.size());
    for (std::size_t i = 0; i < a.predictions.size(); ++i) {
        EXPECT_EQ(a.predictions[i].index, b.predictions[i].index);
        EXPECT_EQ(a.predictions[i].predicted, b.predictions[i].predicted);
        EXPECT_EQ(a.predictions[i].fallback, b.predictions[i].fallback);
    }
}

}  // namespace

TEST(ModelSpec, NamesAndParsing) {
    EXPECT_EQ(all_grey_variants().size(), 12u);
    EXPECT_EQ(benchmark_models().size(), 4u);
    for (const auto& m : all_grey_variants()) EXPECT_EQ(parse_model(m.name()), m);
    for (const auto& m : benchmark_models()) EXPECT_EQ(parse_model(m.name()), m);
    EXPECT_EQ(parse_model("GM11")->name(), "GM(1,1)");
    EXPECT_EQ(parse_model("EFGM11")->name(), "EFGM");
    EXPECT_EQ(parse_model("EFGM_C")->name(), "EFGM_C");
    EXPECT_FALSE(parse_model("AAR"));
    for (const auto& m : all_grey_variants()) {
        if (m.error_corrected) EXPECT_EQ(m.name().rfind("EF", 0), 0u);
    }
}

TEST(RollingConfig, Validation) {
    RollingConfig c = config_for("GM11");
    c.window = 3;
    EXPECT_THROW(c.validate(), InvalidInput);
    c = config_for("EFGM_C");
    c.ef_residual_window = 2;
    EXPECT_THROW(c.validate(), InvalidInput);
    c = config_for("GM11");
    c.omega = 2.0;
    EXPECT_THROW(c.validate(), InvalidInput);
    c = config_for("GM_SC");
    EXPECT_EQ(c.effective_window(), 5u);
    c.window = 7;
    EXPECT_EQ(c.effective_window(), 7u);
}

TEST(RollForecast, ConstantSeries) {
    const Series s(std::vector<double>(100, 2.0));
    const auto trace = roll_forecast(s, config_for("GM11"));
    ASSERT_EQ(trace.predictions.size(), 96u);
    for (const auto& p : trace.predictions) {
        EXPECT_NEAR(p.predicted, 2.0, 1e-12);
        EXPECT_FALSE(p.fallback);
    }
    for (double r : trace.residuals.values) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(RollForecast, GeneratedSeriesMatchesClosedForm) {
    Gen gen(61);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = gen.away_from_zero(-0.1, 0.1, 1e-3);
        const double b = gen.uniform(1, 10);
        const auto x = greycast::testing::gm11_sequence(a, b, gen.uniform(1, 10), 40);
        if (*std::min_element(x.begin(), x.end()) < 0) continue;
        const auto trace = roll_forecast(Series(x), config_for("GM11"));
        for (const auto& p : trace.predictions) {
            // Window [index-4, index-1]; restarting the accumulation there
            // shifts the grey input to b - a * (sum of earlier values).
            const std::size_t start = p.index - 5;
            double before = 0.0;
            for (std::size_t i = 0; i < start; ++i) before += x[i];
            const double local_b = b - a * before;
            const double eq8 = (1 - std::exp(a)) * (x[start] - local_b / a) * std::exp(-a * 4);
            EXPECT_LE(std::abs(p.predicted - eq8), 1e-8);
        }
    }
}

TEST(RollForecast, Counting) {
    const Series s(std::vector<double>{5, 6, 5, 7, 6, 8, 7, 6, 5, 6});
    const auto trace = roll_forecast(s, config_for("GM11"));
    ASSERT_EQ(trace.predictions.size(), 6u);
    EXPECT_EQ(trace.predictions.front().index, 5u);
    EXPECT_EQ(trace.predictions.back().index, 10u);
    for (const auto& p : trace.predictions) EXPECT_EQ(p.observed, s[p.index - 1]);
    EXPECT_EQ(trace.step_times.size(), 6u);
    EXPECT_EQ(trace.residuals.values.size(), 6u);
    EXPECT_EQ(trace.residuals.start_index, 5);

    RollingConfig two = config_for("GM11");
    two.horizon = 2;
    const auto ahead = roll_forecast(s, two);
    ASSERT_EQ(ahead.predictions.size(), 5u);
    EXPECT_EQ(ahead.predictions.front().index, 6u);
    EXPECT_THROW(roll_forecast(Series(std::vector<double>{1, 2, 3, 4}), config_for("GM11")), InsufficientData);
}

TEST(RollForecast, MultiStepUsesClosedFormWithoutRefit) {
    const Series s(std::vector<double>{5, 6, 5, 7, 6, 8, 7, 6, 5, 6});
    RollingConfig c = config_for("GM11");
    c.horizon = 3;
    const auto trace = roll_forecast(s, c);
    const auto window = s.values().subspan(0, 4);
    EXPECT_EQ(trace.predictions.front().predicted, predict(fit_gm11(window), 7));
}

TEST(RollForecast, FallbackToPersistence) {
    const Series s(std::vector<double>{3, 4, -1, 5, 6, 7, 6, 5, 6, 7});
    const auto trace = roll_forecast(s, config_for("GM11"));
    std::size_t flagged = 0;
    for (const auto& p : trace.predictions) {
        if (p.fallback) {
            ++flagged;
            EXPECT_EQ(p.predicted, s[p.index - 2]);
            EXPECT_FALSE(p.error.empty());
        }
    }
    EXPECT_EQ(flagged, 3u);  // windows ending at 4, 5, 6 contain the -1
    EXPECT_EQ(trace.fallback_count(), flagged);
}

TEST(RollForecast, GmScWidensWindow) {
    const auto s = seasonal(1, 60);
    const auto trace = roll_forecast(s, config_for("GM_SC"));
    ASSERT_EQ(trace.predictions.size(), 56u);
    EXPECT_TRUE(trace.predictions.front().fallback);  // t = 4 < 5
    for (std::size_t i = 1; i < trace.predictions.size(); ++i) EXPECT_FALSE(trace.predictions[i].fallback);
}

TEST(RollForecast, BenchmarksFallBackUntilHistorySuffices) {
    const auto s = seasonal(2, 120);
    const auto trace = roll_forecast(s, config_for("SARIMA"));
    for (const auto& p : trace.predictions) EXPECT_EQ(p.fallback, p.index - 1 < 50);
    const auto linear = roll_forecast(s, config_for("LINEAR"));
    EXPECT_EQ(linear.fallback_count(), 0u);
    const auto& first = linear.predictions.front();
    EXPECT_DOUBLE_EQ(first.predicted, 0.346 + 0.637 * s[3] + 0.146 * s[2] + 0.193 * s[1]);
}

TEST(RollForecast, ClampNonNegative) {
    const Series s(std::vector<double>{10, 6, 3, 1.2, 0.4, 0.1, 0.02, 0.01});
    RollingConfig c = config_for("LINEAR");
    c.benchmarks.linear = LinearSpec{-5.0, {1.0}, 1};
    const auto raw = roll_forecast(s, c);
    EXPECT_LT(raw.predictions.back().predicted, 0.0);
    c.clamp_non_negative = true;
    for (const auto& p : roll_forecast(s, c).predictions) EXPECT_GE(p.predicted, 0.0);
}

TEST(RollForecast, DeterminismAndFallbackSoundness) {
    for (const auto& m : all_grey_variants()) {
        const auto s = seasonal(3, 200);
        RollingConfig c;
        c.model = m;
        const auto a = roll_forecast(s, c);
        const auto b = roll_forecast(s, c);
        expect_same_predictions(a, b);
        std::size_t ok = 0;
        for (const auto& p : a.predictions) ok += p.fallback ? 0 : 1;
        EXPECT_EQ(ok + a.fallback_count(), a.predictions.size());
    }
}

TEST(RollForecast, NoLookaheadUnderTruncation) {
    Gen gen(62);
    std::vector<ModelSpec> models = all_grey_variants();
    for (const auto& b : benchmark_models()) models.push_back(b);
    const auto s = seasonal(4, 150);
    for (const auto& m : models) {
        RollingConfig c;
        c.model = m;
        const auto full = roll_forecast(s, c);
        for (int trial = 0; trial < 5; ++trial) {
            const std::size_t t = static_cast<std::size_t>(gen.integer(6, 149));
            const auto cut = roll_forecast(s.slice(0, t), c);
            ASSERT_LE(cut.predictions.size(), full.predictions.size());
            for (std::size_t i = 0; i < cut.predictions.size(); ++i) {
                EXPECT_EQ(cut.predictions[i].predicted, full.predictions[i].predicted) << m.name();
            }
        }
    }
}

TEST(RollForecast, WindowLocalModelsAreShiftInvariant) {
    const auto s = seasonal(5, 120);
    for (ModelKind kind : kAllGreyKinds) {
        RollingConfig c;
        c.model = ModelSpec::grey(kind);
        const auto full = roll_forecast(s, c);
        const std::size_t shift = 17;
        const auto shifted = roll_forecast(s.slice(shift, s.size() - shift), c);
        const std::size_t lead = c.effective_window() - c.window;
        for (std::size_t i = lead; i < shifted.predictions.size(); ++i) {
            EXPECT_EQ(shifted.predictions[i].predicted, full.predictions[i + shift].predicted);
        }
    }
}

TEST(RollForecast, EfOnlineUsesOnlyPastResiduals) {
    const auto s = seasonal(6, 80);
    RollingConfig base = config_for("GM_C");
    RollingConfig ef = config_for("EFGM_C");
    ef.ef_residual_window = 5;
    const auto raw = roll_forecast(s, base);
    const auto corrected = roll_forecast(s, ef);
    // The first step has an empty buffer, so no correction applies.
    EXPECT_EQ(corrected.predictions[0].predicted, raw.predictions[0].predicted);
    ResidualBuffer buffer(5);
    for (std::size_t i = 0; i < raw.predictions.size(); ++i) {
        if (i > 0) buffer.push(raw.predictions[i - 1].observed - raw.predictions[i - 1].predicted);
        const double want = raw.predictions[i].predicted + buffer.next_correction().value_or(0.0);
        EXPECT_NEAR(corrected.predictions[i].predicted, want, 1e-12);
    }
}

TEST(RollForecast, EfInWindowMode) {
    const auto s = seasonal(7, 40);
    RollingConfig ef = config_for("EFGM");
    ef.ef_mode = EfResidualMode::InWindow;
    const auto trace = roll_forecast(s, ef);
    const auto& p = trace.predictions.front();
    const auto window = s.values().subspan(0, 4);
    const GreyFit fit = fit_gm11(window);
    double mean = 0.0;
    for (int k = 2; k <= 4; ++k) mean += window[static_cast<std::size_t>(k - 1)] - predict(fit, k);
    EXPECT_NEAR(p.predicted, predict(fit, 5) + mean / 3, 1e-12);
}

TEST(OmegaGrid, Candidates) {
    EXPECT_EQ((OmegaGrid{2.0, 2.0, 0.5}).candidates(), (std::vector<double>{2.0}));
    const auto c = OmegaGrid{}.candidates();
    EXPECT_EQ(c.size(), 2000u);
    EXPECT_EQ(c.front(), 0.05);
    EXPECT_NEAR(c.back(), 100.0, 1e-9);
    EXPECT_TRUE(std::find(c.begin(), c.end(), 74.1) != c.end());
    EXPECT_THROW((OmegaGrid{1.0, 0.5, 0.1}).validate(), InvalidInput);
    EXPECT_THROW((OmegaGrid{0.0, 1.0, 0.1}).validate(), InvalidInput);
}

namespace {

Series clean_sinusoid() {
    std::vector<double> v;
    for (int k = 1; k <= 120; ++k) v.push_back(10 + 3 * std::sin(2 * std::numbers::pi * k / 12));
    return Series(v);
}

void expect_optimal(const Series& s, const CalibrationResult& result, const RollingConfig& config) {
    for (const auto& [omega, score] : result.evaluated) {
        if (std::isfinite(score)) EXPECT_LE(result.rmse, score);
        if (score == result.rmse) EXPECT_GE(omega, result.omega);
    }
    RollingConfig c = config;
    c.omega = result.omega;
    const auto trace = roll_forecast(s, c);
    EXPECT_EQ(rmse(trace.predicted_values(), trace.observed_values()), result.rmse);
}

}  // namespace

TEST(CalibrateOmega, RecoversSeasonalFrequencyWithWideWindow) {
    const Series s = clean_sinusoid();
    const OmegaGrid grid{0.05, 1.0, 0.05};
    for (const char* model : {"GM_S", "GM_SC"}) {
        RollingConfig c = config_for(model);
        c.window = 24;
        const auto result = calibrate_omega(s, grid, c);
        EXPECT_LE(std::abs(result.omega - 2 * std::numbers::pi / 12), 0.05) << model;
        expect_optimal(s, result, c);
    }
}

TEST(CalibrateOmega, ExhaustiveOptimalityAtDefaultWindow) {
    const Series s = clean_sinusoid();
    const OmegaGrid grid{0.05, 7.0, 0.05};
    for (const char* model : {"GM_S", "GM_C", "GM_SC", "GM_ESC"}) {
        const RollingConfig c = config_for(model);
        expect_optimal(s, calibrate_omega(s, grid, c), c);
    }
}

TEST(CalibrateOmega, SinglePointAndFailures) {
    const auto s = seasonal(8, 60);
    EXPECT_EQ(calibrate_omega(s, {4.3, 4.3, 1.0}, config_for("GM_S")).omega, 4.3);
    EXPECT_THROW(calibrate_omega(s, {}, config_for("GM11")), InvalidInput);
    std::vector<double> negative(30, -1.0);
    EXPECT_THROW(calibrate_omega(Series(negative), {1.0, 2.0, 0.5}, config_for("GM_C")), CalibrationFailed);
}
