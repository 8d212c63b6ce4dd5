#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace eoflex {

// Exact non-negative rational, always reduced.
class Ratio {
public:
    constexpr Ratio() = default;
    Ratio(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) { reduce(); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Ratio operator+(const Ratio& a, const Ratio& b) { return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_}; }
    friend Ratio operator-(const Ratio& a, const Ratio& b) { return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_}; }
    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

private:
    void reduce() {
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace eoflex
