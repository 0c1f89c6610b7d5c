#pragma once

#include <cstddef>
#include <span>

namespace greycast {

/// sqrt(mean((predicted - observed)^2)).
double rmse(std::span<const double> predicted, std::span<const double> observed);

struct MapeResult {
    double percent = 0.0;
    /// Pairs skipped because |observed| < kMapeZeroGuard.
    std::size_t excluded = 0;
    /// Pairs that entered the mean.
    std::size_t used = 0;
};

inline constexpr double kMapeZeroGuard = 1e-9;

/// mean(|(predicted - observed) / observed|) * 100 over pairs with non-zero observations.
/// percent is NaN when every pair is excluded.
MapeResult mape(std::span<const double> predicted, std::span<const double> observed);

/// (reference - candidate) / reference * 100; reference must be positive.
double improvement(double reference, double candidate);

}  // namespace greycast
