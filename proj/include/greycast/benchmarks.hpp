#pragma once

#include <span>
#include <vector>

namespace greycast {

/// Seasonal ARIMA coefficients in the sign convention
///   (1 - phi_1 B - ...)(1 - Phi_1 B^s - ...)(1 - B)^d (1 - B^s)^D (Z_t - mu)
///     = (1 - theta_1 B - theta_2 B^2 - ...) a_t.
struct ArimaSpec {
    std::vector<double> phi;
    std::vector<double> theta;
    std::vector<double> seasonal_phi;
    int d = 0;
    int seasonal_d = 0;
    int season_period = 18;
    double mu = 0.0;
    int truncation = 50;

    /// Throws InvalidInput on negative orders, truncation < 20 or a
    /// non-invertible MA polynomial.
    void validate() const;
};

/// Two-regime self-exciting threshold AR. The regime is chosen by
/// Z_{t-delay} <= threshold (low) versus > threshold (high). Regime
/// coefficients apply to Z_t, Z_{t-lag_step}, Z_{t-2 lag_step}, ...
struct SetarSpec {
    double low_intercept = 0.0;
    std::vector<double> low_coeffs;
    double high_intercept = 0.0;
    std::vector<double> high_coeffs;
    double threshold = 0.0;
    int delay = 0;
    int lag_step = 1;

    void validate() const;
};

/// Z_{t+1} = intercept + c_0 Z_t + c_1 Z_{t-delay} + ... + c_{m-1} Z_{t-(m-1) delay}.
struct LinearSpec {
    double intercept = 0.0;
    std::vector<double> coeffs;
    int delay = 1;

    void validate() const;
};

enum class PsiRoute {
    /// The printed recursions for the ARIMA(1,1,2) and SARIMA(1,0,3)(1,0,0)_s
    /// shapes; other shapes have no printed form and use PolynomialDivision.
    Printed,
    /// AR(infinity) weights by long division of the AR side by theta(B).
    PolynomialDivision,
};

/// psi_0 .. psi_{count-1} with psi_0 = 1; the one-step predictor is
/// sum_{i>=1} psi_i Z_{t+1-i} (plus the mean offset).
std::vector<double> psi_weights(const ArimaSpec& spec, int count, PsiRoute route = PsiRoute::Printed);

/// Minimum history for forecast_arima: truncation + s D + d.
std::size_t arima_min_history(const ArimaSpec& spec);

/// One-step forecast mu (1 - sum psi_i) + sum_{i=1}^{L} psi_i Z_{t+1-i}.
double forecast_arima(const ArimaSpec& spec, std::span<const double> history, PsiRoute route = PsiRoute::Printed);

std::size_t setar_min_history(const SetarSpec& spec);
double forecast_setar(const SetarSpec& spec, std::span<const double> history);

std::size_t linear_min_history(const LinearSpec& spec);
double forecast_linear(const LinearSpec& spec, std::span<const double> history);

/// Fitted coefficient fixtures for the four benchmark forecasters.
ArimaSpec arima_fixture();
ArimaSpec sarima_fixture();
SetarSpec setar_fixture();
LinearSpec linear_fixture();

}  // namespace greycast
