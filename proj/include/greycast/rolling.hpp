#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greycast/benchmarks.hpp"
#include "greycast/error_correction.hpp"
#include "greycast/grey_models.hpp"
#include "greycast/series.hpp"

namespace greycast {

/// Any forecaster the engine can roll: a grey model (optionally
/// Fourier-corrected) or one of the fixed-coefficient benchmarks.
struct ModelSpec {
    enum class Family { Grey, Linear, Setar, Arima, Sarima };

    Family family = Family::Grey;
    ModelKind grey_kind = ModelKind::GM11;
    bool error_corrected = false;

    static ModelSpec grey(ModelKind kind, bool corrected = false) { return {Family::Grey, kind, corrected}; }
    static ModelSpec benchmark(Family family) { return {family, ModelKind::GM11, false}; }

    /// Report name: GM(1,1), EFGM_C, LINEAR, SARIMA, ...
    std::string name() const;
    bool is_grey() const noexcept { return family == Family::Grey; }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Parses report names and the GM11 / EFGM11 aliases.
std::optional<ModelSpec> parse_model(std::string_view name);

/// GM(1,1), EFGM, GVM, EFGVM, GM_S, EFGM_S, ... (12 entries).
std::vector<ModelSpec> all_grey_variants();
/// LINEAR, SETAR, ARIMA, SARIMA.
std::vector<ModelSpec> benchmark_models();

/// Coefficients used when rolling benchmark models.
struct BenchmarkSet {
    LinearSpec linear = linear_fixture();
    SetarSpec setar = setar_fixture();
    ArimaSpec arima = arima_fixture();
    ArimaSpec sarima = sarima_fixture();
    PsiRoute psi_route = PsiRoute::Printed;
};

enum class EfResidualMode {
    /// Ring buffer of the most recent one-step residuals across rolling steps.
    Online,
    /// Only the fitted residuals inside the current window.
    InWindow,
};

struct RollingConfig {
    std::size_t window = 4;
    ModelSpec model;
    /// Angular frequency for trigonometric models; the kind default when empty.
    std::optional<double> omega;
    EfResidualMode ef_mode = EfResidualMode::Online;
    std::size_t ef_residual_window = 24;
    bool clamp_non_negative = false;
    /// Steps ahead; 1 is the usual online one-step forecast.
    int horizon = 1;
    BenchmarkSet benchmarks;

    void validate() const;
    /// Window actually used for grey fits (GM_SC needs at least 5 points).
    std::size_t effective_window() const;
};

struct Prediction {
    std::size_t index = 0;  // 1-based position in the source series
    double predicted = 0.0;
    double observed = 0.0;
    bool fallback = false;
    std::string error;  // fit error text when fallback is set
};

struct ForecastTrace {
    std::vector<Prediction> predictions;
    ResidualSeries residuals;
    std::vector<std::chrono::nanoseconds> step_times;

    std::size_t fallback_count() const;
    std::vector<double> predicted_values() const;
    std::vector<double> observed_values() const;
};

/// Rolls the model over the series: for every window end t (1-based, t >= w)
/// with t + horizon <= n, fits on [t-w+1, t] and predicts t + horizon.
/// Failed fits fall back to the last observation and are flagged.
ForecastTrace roll_forecast(const Series& series, const RollingConfig& config);

struct OmegaGrid {
    double lo = 0.05;
    double hi = 100.0;
    double step = 0.05;

    void validate() const;
    std::vector<double> candidates() const;
};

struct CalibrationResult {
    double omega = 0.0;
    double rmse = 0.0;
    /// RMSE for every grid candidate (NaN where every step fell back).
    std::vector<std::pair<double, double>> evaluated;
};

/// Grid ω minimising rolling RMSE on one calibration series; ties go to the
/// smallest ω. config.model must be a trigonometric grey model.
CalibrationResult calibrate_omega(const Series& series, const OmegaGrid& grid, const RollingConfig& config);

}  // namespace greycast
