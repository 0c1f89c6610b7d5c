#pragma once

#include <chrono>
#include <span>
#include <string>
#include <vector>

namespace greycast {

using Seconds = std::chrono::duration<double>;

/// Time-ordered observations sampled at a fixed interval.
///
/// Construction rejects empty input, non-finite values and a non-positive
/// interval. Non-negativity is a fitting precondition and is checked by the
/// grey models, not here.
class Series {
public:
    explicit Series(std::vector<double> values, Seconds interval = Seconds{60.0}, std::string label = {});

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    Seconds interval() const noexcept { return interval_; }
    const std::string& label() const noexcept { return label_; }

    /// Sub-series [first, first + count) with the same interval and label.
    Series slice(std::size_t first, std::size_t count) const;

private:
    std::vector<double> values_;
    Seconds interval_;
    std::string label_;
};

}  // namespace greycast
