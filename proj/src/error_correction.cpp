#include "greycast/error_correction.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <utility>

#include "greycast/errors.hpp"
#include "greycast/grey_core.hpp"

namespace greycast {

namespace {

// The design depends only on (len, harmonics), so its factorisation is reused
// across the many refits of a rolling run.
struct FourierBasis {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
    double condition = 0.0;
};

const FourierBasis& fourier_basis(std::size_t len, std::size_t harmonics, double period) {
    thread_local std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<FourierBasis>> cache;
    auto& slot = cache[{len, harmonics}];
    if (!slot) {
        const auto rows = static_cast<Eigen::Index>(len);
        const auto cols = static_cast<Eigen::Index>(1 + 2 * harmonics);
        Eigen::MatrixXd design(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double k = static_cast<double>(r + 1);
            design(r, 0) = 0.5;
            for (std::size_t i = 1; i <= harmonics; ++i) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) * k / period;
                design(r, static_cast<Eigen::Index>(2 * i - 1)) = std::cos(angle);
                design(r, static_cast<Eigen::Index>(2 * i)) = std::sin(angle);
            }
        }
        auto basis = std::make_unique<FourierBasis>();
        basis->condition = normal_condition_estimate(design);
        basis->qr.compute(design);
        slot = std::move(basis);
    }
    return *slot;
}

}  // namespace

std::size_t max_harmonics(std::size_t residual_count) {
    if (residual_count < 2) {
        return 0;
    }
    const std::size_t half = (residual_count - 1) / 2;
    return half >= 1 ? half - 1 : 0;
}

FourierResidualModel fit_residual_fourier(std::span<const double> residuals) {
    return fit_residual_fourier(residuals, max_harmonics(residuals.size()));
}

FourierResidualModel fit_residual_fourier(std::span<const double> residuals, std::size_t harmonics) {
    if (residuals.empty()) {
        throw InsufficientData("Fourier residual fit needs at least one residual");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        if (!std::isfinite(residuals[i])) {
            throw InvalidInput("non-finite residual at index " + std::to_string(i));
        }
        sum += residuals[i];
    }

    const std::size_t len = residuals.size();
    FourierResidualModel model;
    model.period = len >= 2 ? static_cast<double>(len - 1) : 1.0;
    model.sample_count = len;

    if (harmonics == 0) {
        model.a0 = 2.0 * (sum / static_cast<double>(len));
        return model;
    }

    if (len < 1 + 2 * harmonics) {
        throw InsufficientData(std::to_string(harmonics) + " harmonics need at least " +
                               std::to_string(1 + 2 * harmonics) + " residuals");
    }
    const FourierBasis& basis = fourier_basis(len, harmonics, model.period);
    if (!(basis.condition <= kMaxCondition)) {
        throw SingularSystem("Fourier design is ill-conditioned", basis.condition);
    }
    const Eigen::VectorXd p = basis.qr.solve(Eigen::Map<const Eigen::VectorXd>(residuals.data(), static_cast<Eigen::Index>(len)));
    model.a0 = p(0);
    model.harmonics.reserve(harmonics);
    for (std::size_t i = 1; i <= harmonics; ++i) {
        model.harmonics.emplace_back(p(static_cast<Eigen::Index>(2 * i - 1)), p(static_cast<Eigen::Index>(2 * i)));
    }
    return model;
}

double extrapolate_error(const FourierResidualModel& model, double k) {
    double value = model.a0 / 2.0;
    for (std::size_t i = 0; i < model.harmonics.size(); ++i) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i + 1) * k / model.period;
        value += model.harmonics[i].first * std::cos(angle) + model.harmonics[i].second * std::sin(angle);
    }
    return value;
}

double corrected_forecast(double raw_forecast, const FourierResidualModel& model, double k) {
    if (!std::isfinite(raw_forecast)) {
        throw InvalidInput("raw forecast must be finite");
    }
    return raw_forecast + extrapolate_error(model, k);
}

ResidualBuffer::ResidualBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) {
        throw InvalidInput("residual buffer capacity must be positive");
    }
}

void ResidualBuffer::push(double residual) {
    values_.push_back(residual);
    if (values_.size() > capacity_) {
        values_.pop_front();
    }
}

std::optional<double> ResidualBuffer::next_correction() const {
    if (values_.empty()) {
        return std::nullopt;
    }
    const std::vector<double> residuals = snapshot();
    const FourierResidualModel model = fit_residual_fourier(residuals);
    return extrapolate_error(model, static_cast<double>(residuals.size() + 1));
}

}  // namespace greycast
