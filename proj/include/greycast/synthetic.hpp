#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "greycast/series.hpp"

namespace greycast {

/// Generator name plus numeric parameters, e.g. parsed from
/// "seasonal:mean=20,amp=5,period=12,sigma=0.5,n=500".
///
/// Generators and their parameters (defaults in brackets):
///   exponential  a [0.1], b [2], x1 [1], n [100]
///                  x(k) = (b - a X1(k-1)) / (1 + a/2), the GM(1,1) basic form
///   logistic     capacity [60], rate [0.05], midpoint [n/2], floor [0], n [288], sigma [0]
///   seasonal     mean [20], amp [5], period [12], n [500], sigma [0]
///                  mean + amp sin(2 pi k / period) + noise, k = 1..n
///   incident     base [60], drop [35], start [220], recover [230], ramp [1], n [288], sigma [0]
///                  level `base`, falling by `drop` from position `start` and
///                  recovering from position `recover`, each over `ramp` steps
/// Noisy values are clipped at 0. `interval` (seconds, default 60) sets the spacing.
struct SyntheticSpec {
    std::string generator;
    std::map<std::string, double> params;
    std::uint64_t seed = 42;
};

/// Parses "name" or "name:key=value,key=value".
SyntheticSpec parse_synthetic_spec(std::string_view text, std::uint64_t seed = 42);

/// Deterministic for a given spec and seed; the label records the parameters.
Series generate_synthetic(const SyntheticSpec& spec);

}  // namespace greycast
