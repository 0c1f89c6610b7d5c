#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace greycast {

/// Errors e(k) = observed - predicted, indexed k = start_index, start_index + 1, ...
struct ResidualSeries {
    std::vector<double> values;
    int start_index = 1;
};

/// e(k) ~ a0/2 + sum_i [a_i cos(2 pi i k / T) + b_i sin(2 pi i k / T)].
///
/// k counts residual positions from 1. With F = 0 the model is the residual
/// mean and a0 is twice that mean.
struct FourierResidualModel {
    double a0 = 0.0;
    std::vector<std::pair<double, double>> harmonics;  // (a_i, b_i), i = 1..F
    double period = 1.0;                               // T, in samples
    std::size_t sample_count = 0;                      // residuals used in the fit

    std::size_t harmonic_count() const noexcept { return harmonics.size(); }
};

/// Default harmonic cap max(0, floor((len - 1) / 2) - 1).
std::size_t max_harmonics(std::size_t residual_count);

/// Least-squares fit with T = len - 1 (T = 1 for a single residual) and the
/// default harmonic cap.
FourierResidualModel fit_residual_fourier(std::span<const double> residuals);
/// Same fit with an explicit harmonic count; F = 0 always yields the exact mean.
FourierResidualModel fit_residual_fourier(std::span<const double> residuals, std::size_t harmonics);

/// Value of the fitted series at residual position k.
double extrapolate_error(const FourierResidualModel& model, double k);

/// raw + extrapolate_error(model, k).
double corrected_forecast(double raw_forecast, const FourierResidualModel& model, double k);

/// Most recent one-step residuals of a base model, oldest first.
class ResidualBuffer {
public:
    explicit ResidualBuffer(std::size_t capacity);

    void push(double residual);
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    bool empty() const noexcept { return values_.empty(); }
    std::vector<double> snapshot() const { return {values_.begin(), values_.end()}; }

    /// Correction for the next step: fits the buffer and extrapolates to
    /// position size() + 1. Empty buffers yield no correction.
    std::optional<double> next_correction() const;

private:
    std::size_t capacity_;
    std::deque<double> values_;
};

}  // namespace greycast
