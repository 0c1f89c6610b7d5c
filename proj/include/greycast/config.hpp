#pragma once

#include <map>
#include <string>
#include <string_view>

#include "greycast/grey_models.hpp"
#include "greycast/rolling.hpp"

namespace greycast {

/// Benchmark coefficient fixtures and per-model angular frequencies.
///
/// INI layout, one section per model:
///
///   [LINEAR]  intercept, coeffs, delay
///   [SETAR]   low_intercept, low_coeffs, high_intercept, high_coeffs,
///             threshold, delay, lag_step
///   [ARIMA]   phi, theta, seasonal_phi, d, D, season_period, mu, truncation
///   [SARIMA]  same keys as ARIMA
///   [GM_S] [GM_C] [GM_SC] [GM_ESC]   omega
///
/// Lists are comma- or whitespace-separated. Missing sections keep the
/// built-in fixtures; unknown sections or keys are rejected.
struct ModelConfig {
    BenchmarkSet benchmarks;
    std::map<ModelKind, double> omegas;
};

ModelConfig default_model_config();
ModelConfig load_model_config(const std::string& path);
ModelConfig parse_model_config(std::string_view text);

}  // namespace greycast
