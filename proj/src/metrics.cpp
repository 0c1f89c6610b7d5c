#include "greycast/metrics.hpp"

#include <cmath>
#include <limits>

#include "greycast/errors.hpp"

namespace greycast {

namespace {

void check_pairs(std::span<const double> predicted, std::span<const double> observed) {
    if (predicted.size() != observed.size()) {
        throw InvalidInput("predicted and observed lengths differ");
    }
    if (predicted.empty()) {
        throw InvalidInput("metrics need at least one pair");
    }
}

}  // namespace

double rmse(std::span<const double> predicted, std::span<const double> observed) {
    check_pairs(predicted, observed);
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double e = predicted[i] - observed[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(predicted.size()));
}

MapeResult mape(std::span<const double> predicted, std::span<const double> observed) {
    check_pairs(predicted, observed);
    MapeResult result;
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (std::abs(observed[i]) < kMapeZeroGuard) {
            ++result.excluded;
            continue;
        }
        sum += std::abs((predicted[i] - observed[i]) / observed[i]);
        ++result.used;
    }
    result.percent = result.used == 0 ? std::numeric_limits<double>::quiet_NaN()
                                      : sum / static_cast<double>(result.used) * 100.0;
    return result;
}

double improvement(double reference, double candidate) {
    if (!(reference > 0.0)) {
        throw InvalidInput("improvement reference must be positive");
    }
    return (reference - candidate) / reference * 100.0;
}

}  // namespace greycast
