#include "greycast/rolling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "greycast/errors.hpp"
#include "greycast/metrics.hpp"

namespace greycast {

namespace {

using Family = ModelSpec::Family;

struct StepResult {
    double raw = 0.0;
    double emitted = 0.0;
};

double benchmark_forecast(const RollingConfig& config, std::span<const double> history) {
    const BenchmarkSet& set = config.benchmarks;
    // Iterated for horizons beyond one step, feeding forecasts back as history.
    std::vector<double> extended;
    std::span<const double> current = history;
    double value = 0.0;
    for (int h = 0; h < config.horizon; ++h) {
        switch (config.model.family) {
            case Family::Linear: value = forecast_linear(set.linear, current); break;
            case Family::Setar: value = forecast_setar(set.setar, current); break;
            case Family::Arima: value = forecast_arima(set.arima, current, set.psi_route); break;
            case Family::Sarima: value = forecast_arima(set.sarima, current, set.psi_route); break;
            case Family::Grey: throw InvalidInput("not a benchmark model");
        }
        if (h + 1 < config.horizon) {
            if (extended.empty()) {
                extended.assign(history.begin(), history.end());
            }
            extended.push_back(value);
            current = extended;
        }
    }
    return value;
}

// In-window fitted residuals x0(k) - x0_hat(k), k = 2..w.
std::vector<double> in_window_residuals(const GreyFit& fit, std::span<const double> window) {
    std::vector<double> residuals;
    residuals.reserve(window.size() - 1);
    for (std::size_t k = 2; k <= window.size(); ++k) {
        residuals.push_back(window[k - 1] - predict(fit, static_cast<int>(k)));
    }
    return residuals;
}

}  // namespace

std::string ModelSpec::name() const {
    switch (family) {
        case Family::Grey: return error_corrected ? ef_name(grey_kind) : std::string(short_name(grey_kind));
        case Family::Linear: return "LINEAR";
        case Family::Setar: return "SETAR";
        case Family::Arima: return "ARIMA";
        case Family::Sarima: return "SARIMA";
    }
    return "?";
}

std::optional<ModelSpec> parse_model(std::string_view name) {
    if (name == "LINEAR") return ModelSpec::benchmark(Family::Linear);
    if (name == "SETAR") return ModelSpec::benchmark(Family::Setar);
    if (name == "ARIMA") return ModelSpec::benchmark(Family::Arima);
    if (name == "SARIMA") return ModelSpec::benchmark(Family::Sarima);
    if (name == "EFGM11") return ModelSpec::grey(ModelKind::GM11, true);
    if (auto kind = parse_model_kind(name)) {
        return ModelSpec::grey(*kind);
    }
    for (ModelKind kind : kAllGreyKinds) {
        if (name == ef_name(kind)) {
            return ModelSpec::grey(kind, true);
        }
    }
    return std::nullopt;
}

std::vector<ModelSpec> all_grey_variants() {
    std::vector<ModelSpec> out;
    for (ModelKind kind : kAllGreyKinds) {
        out.push_back(ModelSpec::grey(kind));
        out.push_back(ModelSpec::grey(kind, true));
    }
    return out;
}

std::vector<ModelSpec> benchmark_models() {
    return {ModelSpec::benchmark(Family::Linear), ModelSpec::benchmark(Family::Setar),
            ModelSpec::benchmark(Family::Arima), ModelSpec::benchmark(Family::Sarima)};
}

void RollingConfig::validate() const {
    if (window < 4) {
        throw InvalidInput("rolling window must be >= 4");
    }
    if (horizon < 1) {
        throw InvalidInput("forecast horizon must be >= 1");
    }
    if (ef_mode == EfResidualMode::Online && ef_residual_window < 3) {
        throw InvalidInput("EF residual window must be >= 3");
    }
    if (omega && (!std::isfinite(*omega) || !(*omega > 0.0))) {
        throw InvalidInput("omega must be positive and finite");
    }
    if (model.is_grey() && omega && !is_trig(model.grey_kind)) {
        throw InvalidInput(model.name() + " does not take an omega");
    }
}

std::size_t RollingConfig::effective_window() const {
    if (model.is_grey()) {
        return std::max(window, min_window(model.grey_kind));
    }
    return window;
}

std::size_t ForecastTrace::fallback_count() const {
    return static_cast<std::size_t>(
        std::count_if(predictions.begin(), predictions.end(), [](const Prediction& p) { return p.fallback; }));
}

std::vector<double> ForecastTrace::predicted_values() const {
    std::vector<double> out;
    out.reserve(predictions.size());
    for (const auto& p : predictions) out.push_back(p.predicted);
    return out;
}

std::vector<double> ForecastTrace::observed_values() const {
    std::vector<double> out;
    out.reserve(predictions.size());
    for (const auto& p : predictions) out.push_back(p.observed);
    return out;
}

ForecastTrace roll_forecast(const Series& series, const RollingConfig& config) {
    config.validate();
    const std::size_t w = config.window;
    const auto h = static_cast<std::size_t>(config.horizon);
    const std::size_t n = series.size();
    if (n < w + h) {
        throw InsufficientData("series of length " + std::to_string(n) + " is too short for window " +
                               std::to_string(w) + " and horizon " + std::to_string(h));
    }
    const std::span<const double> values = series.values();
    const std::size_t fit_window = config.effective_window();
    const bool grey = config.model.is_grey();
    const bool corrected = grey && config.model.error_corrected;
    std::optional<double> omega = config.omega;
    if (grey && is_trig(config.model.grey_kind) && !omega) {
        omega = default_omega(config.model.grey_kind);
    }

    ResidualBuffer buffer(config.ef_residual_window);
    // Base-model residuals awaiting their observation, keyed by step.
    std::vector<std::optional<double>> raw_by_step;

    ForecastTrace trace;
    const std::size_t steps = n - w - h + 1;
    trace.predictions.reserve(steps);
    trace.step_times.reserve(steps);
    raw_by_step.reserve(steps);
    trace.residuals.start_index = static_cast<int>(w + h);

    for (std::size_t step = 0; step < steps; ++step) {
        const std::size_t t = w + step;  // 1-based window end; values[0..t) are known
        const std::size_t target = t + h;
        const auto started = std::chrono::steady_clock::now();

        // The prediction made h steps ago targets t, which is now observed.
        if (corrected && config.ef_mode == EfResidualMode::Online && step >= h) {
            if (const auto& raw = raw_by_step[step - h]) {
                buffer.push(values[t - 1] - *raw);
            }
        }

        Prediction p;
        p.index = target;
        p.observed = values[target - 1];
        std::optional<double> raw_value;
        try {
            double emitted = 0.0;
            if (grey) {
                if (t < fit_window) {
                    throw InsufficientData(config.model.name() + " needs a window of " + std::to_string(fit_window));
                }
                const std::span<const double> window = values.subspan(t - fit_window, fit_window);
                const GreyFit fit = fit_model(window, config.model.grey_kind, omega);
                const int position = static_cast<int>(fit_window + h);
                const double raw = predict(fit, position);
                raw_value = raw;
                emitted = raw;
                if (corrected) {
                    if (config.ef_mode == EfResidualMode::Online) {
                        if (!buffer.empty()) {
                            const std::vector<double> residuals = buffer.snapshot();
                            const FourierResidualModel model = fit_residual_fourier(residuals);
                            emitted = corrected_forecast(raw, model, static_cast<double>(residuals.size() + h));
                        }
                    } else {
                        const std::vector<double> residuals = in_window_residuals(fit, window);
                        const FourierResidualModel model = fit_residual_fourier(residuals);
                        emitted = corrected_forecast(raw, model, static_cast<double>(residuals.size() + h));
                    }
                }
            } else {
                emitted = benchmark_forecast(config, values.first(t));
            }
            if (!std::isfinite(emitted)) {
                throw NumericalDegeneracy("non-finite forecast");
            }
            p.predicted = config.clamp_non_negative ? std::max(0.0, emitted) : emitted;
        } catch (const Error& e) {
            raw_value.reset();
            p.predicted = values[t - 1];
            p.fallback = true;
            p.error = e.what();
        }
        raw_by_step.push_back(raw_value);
        trace.residuals.values.push_back(p.observed - p.predicted);
        trace.predictions.push_back(std::move(p));
        trace.step_times.push_back(
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - started));
    }
    return trace;
}

void OmegaGrid::validate() const {
    if (!(lo > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || !(hi >= lo) || !(step > 0.0) ||
        !std::isfinite(step)) {
        throw InvalidInput("omega grid needs 0 < lo <= hi and step > 0");
    }
}

std::vector<double> OmegaGrid::candidates() const {
    validate();
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // Trim accumulation noise so 0.05 * 214 prints as 10.7.
        out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
    }
    return out;
}

CalibrationResult calibrate_omega(const Series& series, const OmegaGrid& grid, const RollingConfig& config) {
    if (!config.model.is_grey() || !is_trig(config.model.grey_kind)) {
        throw InvalidInput("omega calibration applies to GM_S, GM_C, GM_SC and GM_ESC (and their EF variants)");
    }
    CalibrationResult result;
    result.rmse = std::numeric_limits<double>::infinity();
    bool found = false;
    for (double omega : grid.candidates()) {
        RollingConfig candidate = config;
        candidate.omega = omega;
        const ForecastTrace trace = roll_forecast(series, candidate);
        double score = std::numeric_limits<double>::quiet_NaN();
        if (trace.fallback_count() < trace.predictions.size()) {
            score = rmse(trace.predicted_values(), trace.observed_values());
        }
        result.evaluated.emplace_back(omega, score);
        if (std::isfinite(score) && score < result.rmse) {
            result.rmse = score;
            result.omega = omega;
            found = true;
        }
    }
    if (!found) {
        throw CalibrationFailed("every omega candidate failed to fit");
    }
    return result;
}

}  // namespace greycast
