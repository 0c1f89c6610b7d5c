#include "greycast/series.hpp"

#include <cmath>

#include "greycast/errors.hpp"

namespace greycast {

Series::Series(std::vector<double> values, Seconds interval, std::string label)
    : values_(std::move(values)), interval_(interval), label_(std::move(label)) {
    if (values_.empty()) {
        throw InvalidInput("series must contain at least one value");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvalidInput("non-finite value at index " + std::to_string(i));
        }
    }
    if (!(interval_.count() > 0.0)) {
        throw InvalidInput("series interval must be positive");
    }
}

Series Series::slice(std::size_t first, std::size_t count) const {
    if (first + count > values_.size() || count == 0) {
        throw InvalidInput("slice out of range");
    }
    auto begin = values_.begin() + static_cast<std::ptrdiff_t>(first);
    return Series(std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(count)), interval_, label_);
}

}  // namespace greycast
