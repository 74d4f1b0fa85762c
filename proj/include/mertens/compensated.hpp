#pragma once

#include <cmath>

namespace mertens {

/// Neumaier's variant of Kahan summation: also compensates when the addend
/// is larger in magnitude than the running sum.
template <typename T = double>
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    constexpr explicit CompensatedSum(T init) : sum_(init) {}

    constexpr CompensatedSum& operator+=(T value) noexcept {
        const T t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            residual_ += (sum_ - t) + value;
        } else {
            residual_ += (value - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    constexpr CompensatedSum& operator+=(const CompensatedSum& other) noexcept {
        *this += other.sum_;
        residual_ += other.residual_;
        return *this;
    }

    constexpr T value() const noexcept { return sum_ + residual_; }
    constexpr T raw_sum() const noexcept { return sum_; }
    constexpr T residual() const noexcept { return residual_; }

private:
    T sum_{0};
    T residual_{0};
};

}  // namespace mertens
