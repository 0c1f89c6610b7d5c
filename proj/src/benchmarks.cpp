#include "greycast/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "greycast/errors.hpp"

namespace greycast {

namespace {

using Poly = std::vector<double>;

Poly multiply(const Poly& lhs, const Poly& rhs) {
    Poly out(lhs.size() + rhs.size() - 1, 0.0);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        for (std::size_t j = 0; j < rhs.size(); ++j) {
            out[i + j] += lhs[i] * rhs[j];
        }
    }
    return out;
}

// phi(B) Phi(B^s) (1 - B)^d (1 - B^s)^D as coefficients of B^0, B^1, ...
Poly ar_side(const ArimaSpec& spec) {
    Poly poly{1.0};
    Poly nonseasonal{1.0};
    for (double c : spec.phi) {
        nonseasonal.push_back(-c);
    }
    poly = multiply(poly, nonseasonal);
    const auto s = static_cast<std::size_t>(spec.season_period);
    Poly seasonal(spec.seasonal_phi.size() * s + 1, 0.0);
    seasonal[0] = 1.0;
    for (std::size_t j = 0; j < spec.seasonal_phi.size(); ++j) {
        seasonal[(j + 1) * s] = -spec.seasonal_phi[j];
    }
    poly = multiply(poly, seasonal);
    for (int i = 0; i < spec.d; ++i) {
        poly = multiply(poly, Poly{1.0, -1.0});
    }
    Poly seasonal_diff(s + 1, 0.0);
    seasonal_diff[0] = 1.0;
    seasonal_diff[s] = -1.0;
    for (int i = 0; i < spec.seasonal_d; ++i) {
        poly = multiply(poly, seasonal_diff);
    }
    return poly;
}

std::vector<double> division_weights(const ArimaSpec& spec, int count) {
    const Poly ar = ar_side(spec);
    std::vector<double> c(static_cast<std::size_t>(count), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        double v = i < ar.size() ? ar[i] : 0.0;
        for (std::size_t j = 1; j <= spec.theta.size() && j <= i; ++j) {
            v += spec.theta[j - 1] * c[i - j];
        }
        c[i] = v;
    }
    std::vector<double> psi(c.size());
    psi[0] = 1.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        psi[i] = -c[i];
    }
    return psi;
}

bool is_printed_arima_shape(const ArimaSpec& spec) {
    return spec.phi.size() == 1 && spec.theta.size() == 2 && spec.seasonal_phi.empty() && spec.d == 1 &&
           spec.seasonal_d == 0;
}

bool is_printed_sarima_shape(const ArimaSpec& spec) {
    return spec.phi.size() == 1 && spec.theta.size() == 3 && spec.seasonal_phi.size() == 1 && spec.d == 0 &&
           spec.seasonal_d == 0 && spec.season_period > 3;
}

// ARIMA(1,1,2): psi_1 = 1 + phi - theta_1, psi_2 = psi_1 theta_1 - phi - theta_2,
// psi_i = psi_{i-1} theta_1 + theta_2 for i > 2.
std::vector<double> printed_arima_weights(const ArimaSpec& spec, int count) {
    const double phi = spec.phi[0];
    const double t1 = spec.theta[0];
    const double t2 = spec.theta[1];
    std::vector<double> psi(static_cast<std::size_t>(count), 0.0);
    psi[0] = 1.0;
    for (std::size_t i = 1; i < psi.size(); ++i) {
        if (i == 1) {
            psi[i] = 1.0 + phi - t1;
        } else if (i == 2) {
            psi[i] = psi[1] * t1 - phi - t2;
        } else {
            psi[i] = psi[i - 1] * t1 + t2;
        }
    }
    return psi;
}

// SARIMA(1,0,3)(1,0,0)_s: psi_1 = phi - theta_1, psi_2 = psi_1 theta_1 - theta_2,
// psi_3 = psi_2 theta_1 + psi_2 theta_2 - theta_3, then the three-term MA
// recursion with +Phi at lag s and -phi Phi at lag s + 1.
std::vector<double> printed_sarima_weights(const ArimaSpec& spec, int count) {
    const double phi = spec.phi[0];
    const double t1 = spec.theta[0];
    const double t2 = spec.theta[1];
    const double t3 = spec.theta[2];
    const double seasonal = spec.seasonal_phi[0];
    const auto s = static_cast<std::size_t>(spec.season_period);
    std::vector<double> psi(static_cast<std::size_t>(count), 0.0);
    psi[0] = 1.0;
    for (std::size_t i = 1; i < psi.size(); ++i) {
        if (i == 1) {
            psi[i] = phi - t1;
        } else if (i == 2) {
            psi[i] = psi[1] * t1 - t2;
        } else if (i == 3) {
            psi[i] = psi[2] * t1 + psi[2] * t2 - t3;
        } else {
            psi[i] = psi[i - 1] * t1 + psi[i - 2] * t2 + psi[i - 3] * t3;
            if (i == s) {
                psi[i] += seasonal;
            } else if (i == s + 1) {
                psi[i] -= phi * seasonal;
            }
        }
    }
    return psi;
}

void check_history(std::span<const double> history, std::size_t needed, const char* model) {
    if (history.size() < needed) {
        throw InsufficientData(std::string(model) + " needs at least " + std::to_string(needed) +
                               " observations (got " + std::to_string(history.size()) + ")");
    }
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (!std::isfinite(history[i])) {
            throw InvalidInput("non-finite history value at index " + std::to_string(i));
        }
    }
}

// Z_{t - lag} where t is the last history index.
double lagged(std::span<const double> history, std::size_t lag) { return history[history.size() - 1 - lag]; }

}  // namespace

void ArimaSpec::validate() const {
    if (d < 0 || seasonal_d < 0) {
        throw InvalidInput("differencing orders must be non-negative");
    }
    if (season_period < 1) {
        throw InvalidInput("season period must be >= 1");
    }
    if (truncation < 20) {
        throw InvalidInput("AR(infinity) truncation must be >= 20");
    }
    for (double v : phi) {
        if (!std::isfinite(v)) throw InvalidInput("non-finite AR coefficient");
    }
    for (double v : seasonal_phi) {
        if (!std::isfinite(v)) throw InvalidInput("non-finite seasonal AR coefficient");
    }
    for (double v : theta) {
        if (!std::isfinite(v)) throw InvalidInput("non-finite MA coefficient");
    }
    if (!std::isfinite(mu)) {
        throw InvalidInput("non-finite mean");
    }
    if (theta.empty()) {
        return;
    }
    // Roots of 1 - theta_1 z - ... - theta_q z^q lie outside the unit circle
    // iff the companion matrix of z^q - theta_1 z^{q-1} - ... - theta_q has
    // spectral radius below one.
    const auto q = static_cast<Eigen::Index>(theta.size());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(q, q);
    for (Eigen::Index j = 0; j < q; ++j) {
        companion(0, j) = theta[static_cast<std::size_t>(j)];
    }
    for (Eigen::Index i = 1; i < q; ++i) {
        companion(i, i - 1) = 1.0;
    }
    const double radius = companion.eigenvalues().cwiseAbs().maxCoeff();
    if (!(radius < 1.0)) {
        throw InvalidInput("MA polynomial is not invertible (root modulus " + std::to_string(1.0 / radius) + ")");
    }
}

void SetarSpec::validate() const {
    if (low_coeffs.empty() || high_coeffs.empty()) {
        throw InvalidInput("SETAR regimes need at least one coefficient each");
    }
    if (!std::isfinite(threshold)) {
        throw InvalidInput("SETAR threshold must be finite");
    }
    if (delay < 0 || lag_step < 1) {
        throw InvalidInput("SETAR delay must be >= 0 and lag step >= 1");
    }
}

void LinearSpec::validate() const {
    if (coeffs.empty()) {
        throw InvalidInput("LINEAR needs at least one coefficient");
    }
    if (delay < 1) {
        throw InvalidInput("LINEAR delay must be >= 1");
    }
}

std::vector<double> psi_weights(const ArimaSpec& spec, int count, PsiRoute route) {
    if (count < 1) {
        throw InvalidInput("psi weight count must be >= 1");
    }
    if (route == PsiRoute::Printed) {
        if (is_printed_arima_shape(spec)) {
            return printed_arima_weights(spec, count);
        }
        if (is_printed_sarima_shape(spec)) {
            return printed_sarima_weights(spec, count);
        }
    }
    return division_weights(spec, count);
}

std::size_t arima_min_history(const ArimaSpec& spec) {
    return static_cast<std::size_t>(spec.truncation + spec.season_period * spec.seasonal_d + spec.d);
}

double forecast_arima(const ArimaSpec& spec, std::span<const double> history, PsiRoute route) {
    spec.validate();
    check_history(history, arima_min_history(spec), "ARIMA");
    const std::vector<double> psi = psi_weights(spec, spec.truncation + 1, route);
    double weighted = 0.0;
    double weight_sum = 0.0;
    for (std::size_t i = 1; i < psi.size(); ++i) {
        weighted += psi[i] * lagged(history, i - 1);
        weight_sum += psi[i];
    }
    return spec.mu * (1.0 - weight_sum) + weighted;
}

std::size_t setar_min_history(const SetarSpec& spec) {
    const std::size_t lags = std::max(spec.low_coeffs.size(), spec.high_coeffs.size());
    const std::size_t max_lag = (lags - 1) * static_cast<std::size_t>(spec.lag_step);
    return std::max(max_lag, static_cast<std::size_t>(spec.delay)) + 1;
}

double forecast_setar(const SetarSpec& spec, std::span<const double> history) {
    spec.validate();
    check_history(history, setar_min_history(spec), "SETAR");
    const bool low = lagged(history, static_cast<std::size_t>(spec.delay)) <= spec.threshold;
    const auto& coeffs = low ? spec.low_coeffs : spec.high_coeffs;
    double value = low ? spec.low_intercept : spec.high_intercept;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        value += coeffs[j] * lagged(history, j * static_cast<std::size_t>(spec.lag_step));
    }
    return value;
}

std::size_t linear_min_history(const LinearSpec& spec) {
    return (spec.coeffs.size() - 1) * static_cast<std::size_t>(spec.delay) + 1;
}

double forecast_linear(const LinearSpec& spec, std::span<const double> history) {
    spec.validate();
    check_history(history, linear_min_history(spec), "LINEAR");
    double value = spec.intercept;
    for (std::size_t j = 0; j < spec.coeffs.size(); ++j) {
        value += spec.coeffs[j] * lagged(history, j * static_cast<std::size_t>(spec.delay));
    }
    return value;
}

ArimaSpec arima_fixture() {
    ArimaSpec spec;
    spec.phi = {-0.749};
    spec.theta = {-0.363, 0.402};
    spec.d = 1;
    return spec;
}

ArimaSpec sarima_fixture() {
    ArimaSpec spec;
    spec.phi = {0.990};
    spec.theta = {0.377, 0.121, -0.047};
    spec.seasonal_phi = {-0.071};
    spec.season_period = 18;
    spec.mu = 11.419;
    return spec;
}

SetarSpec setar_fixture() {
    SetarSpec spec;
    spec.low_intercept = 1.215;
    spec.low_coeffs = {0.302, 0.337, 0.221};
    spec.high_intercept = 2.905;
    spec.high_coeffs = {0.748, -0.053, 0.196};
    spec.threshold = 12.29;
    spec.delay = 0;
    return spec;
}

LinearSpec linear_fixture() {
    LinearSpec spec;
    spec.intercept = 0.346;
    spec.coeffs = {0.637, 0.146, 0.193};
    spec.delay = 1;
    return spec;
}

}  // namespace greycast
