#include "greycast/synthetic.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "greycast/errors.hpp"

namespace greycast {

namespace {

class Params {
public:
    Params(const SyntheticSpec& spec, std::set<std::string> allowed) : spec_(spec) {
        allowed.insert("interval");
        for (const auto& [key, value] : spec.params) {
            if (!allowed.contains(key)) {
                throw InvalidInput("unknown parameter '" + key + "' for generator " + spec.generator);
            }
            if (!std::isfinite(value)) {
                throw InvalidInput("parameter '" + key + "' must be finite");
            }
        }
    }

    double get(const std::string& key, double fallback) const {
        const auto it = spec_.params.find(key);
        return it == spec_.params.end() ? fallback : it->second;
    }

    std::size_t count(double fallback = 100.0) const {
        const double n = get("n", fallback);
        if (!(n >= 1.0) || n != std::floor(n)) {
            throw InvalidInput("n must be a positive integer");
        }
        return static_cast<std::size_t>(n);
    }

private:
    const SyntheticSpec& spec_;
};

std::string describe(const SyntheticSpec& spec) {
    std::string label = spec.generator + "(";
    bool first = true;
    for (const auto& [key, value] : spec.params) {
        char buf[64];
        auto end = std::to_chars(buf, buf + sizeof buf, value).ptr;
        label += (first ? "" : ",") + key + "=" + std::string(buf, end);
        first = false;
    }
    return label + (first ? "" : ",") + "seed=" + std::to_string(spec.seed) + ")";
}

void add_noise(std::vector<double>& values, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) {
        throw InvalidInput("sigma must be non-negative");
    }
    if (sigma == 0.0) {
        return;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& v : values) {
        v = std::max(0.0, v + noise(rng));
    }
}

}  // namespace

SyntheticSpec parse_synthetic_spec(std::string_view text, std::uint64_t seed) {
    SyntheticSpec spec;
    spec.seed = seed;
    const auto colon = text.find(':');
    spec.generator = std::string(text.substr(0, colon));
    if (colon == std::string_view::npos) {
        return spec;
    }
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidInput("expected key=value in generator spec, got '" + std::string(item) + "'");
        }
        double value = 0.0;
        const std::string_view number = item.substr(eq + 1);
        auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
        if (ec != std::errc{} || ptr != number.data() + number.size()) {
            throw InvalidInput("non-numeric generator parameter '" + std::string(item) + "'");
        }
        spec.params[std::string(item.substr(0, eq))] = value;
    }
    return spec;
}

Series generate_synthetic(const SyntheticSpec& spec) {
    std::vector<double> values;
    Seconds interval{60.0};

    if (spec.generator == "exponential") {
        const Params p(spec, {"a", "b", "x1", "n"});
        const double a = p.get("a", 0.1);
        const double b = p.get("b", 2.0);
        const std::size_t n = p.count(100.0);
        if (a == -2.0) {
            throw InvalidInput("exponential generator needs a != -2");
        }
        values.push_back(p.get("x1", 1.0));
        double accumulated = values.front();
        for (std::size_t k = 1; k < n; ++k) {
            const double next = (b - a * accumulated) / (1.0 + a / 2.0);
            values.push_back(next);
            accumulated += next;
        }
        interval = Seconds{p.get("interval", 60.0)};
    } else if (spec.generator == "logistic") {
        const Params p(spec, {"capacity", "rate", "midpoint", "floor", "n", "sigma"});
        const std::size_t n = p.count(288.0);
        const double capacity = p.get("capacity", 60.0);
        const double rate = p.get("rate", 0.05);
        const double midpoint = p.get("midpoint", static_cast<double>(n) / 2.0);
        const double floor_level = p.get("floor", 0.0);
        for (std::size_t k = 1; k <= n; ++k) {
            values.push_back(floor_level + capacity / (1.0 + std::exp(-rate * (static_cast<double>(k) - midpoint))));
        }
        add_noise(values, p.get("sigma", 0.0), spec.seed);
        interval = Seconds{p.get("interval", 60.0)};
    } else if (spec.generator == "seasonal") {
        const Params p(spec, {"mean", "amp", "period", "n", "sigma"});
        const std::size_t n = p.count(500.0);
        const double mean = p.get("mean", 20.0);
        const double amp = p.get("amp", 5.0);
        const double period = p.get("period", 12.0);
        if (!(period > 0.0)) {
            throw InvalidInput("seasonal period must be positive");
        }
        for (std::size_t k = 1; k <= n; ++k) {
            values.push_back(mean + amp * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / period));
        }
        add_noise(values, p.get("sigma", 0.0), spec.seed);
        interval = Seconds{p.get("interval", 60.0)};
    } else if (spec.generator == "incident") {
        const Params p(spec, {"base", "drop", "start", "recover", "ramp", "n", "sigma"});
        const std::size_t n = p.count(288.0);
        const double base = p.get("base", 60.0);
        const double drop = p.get("drop", 35.0);
        const double start = p.get("start", 220.0);
        const double recover = p.get("recover", 230.0);
        const double ramp = p.get("ramp", 1.0);
        if (!(ramp >= 1.0) || recover < start) {
            throw InvalidInput("incident generator needs ramp >= 1 and recover >= start");
        }
        for (std::size_t i = 1; i <= n; ++i) {
            const double k = static_cast<double>(i);
            double depth = 0.0;
            if (k >= start && k < recover) {
                depth = std::min(1.0, (k - start + 1.0) / ramp);
            } else if (k >= recover) {
                const double entered = std::min(1.0, (recover - start) / ramp);
                depth = std::max(0.0, entered - (k - recover + 1.0) / ramp);
            }
            values.push_back(base - drop * depth);
        }
        add_noise(values, p.get("sigma", 0.0), spec.seed);
        interval = Seconds{p.get("interval", 60.0)};
    } else {
        throw InvalidInput("unknown generator '" + spec.generator +
                           "' (expected exponential, logistic, seasonal or incident)");
    }
    return Series(std::move(values), interval, describe(spec));
}

}  // namespace greycast
