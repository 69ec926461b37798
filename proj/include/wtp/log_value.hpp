#pragma once

#include <cmath>
#include <limits>

namespace wtp {

/// Nonnegative real stored as its natural log. log() == -inf encodes exact zero,
/// which is absorbing under multiplication. Comparisons happen on the log scale,
/// so magnitudes far below double range stay ordered.
class LogValue {
public:
    constexpr LogValue() : log_(-std::numeric_limits<double>::infinity()) {}

    static constexpr LogValue from_log(double log_magnitude) {
        LogValue v;
        v.log_ = log_magnitude;
        return v;
    }

    static LogValue from_value(double value) {
        return from_log(value > 0.0 ? std::log(value)
                                    : -std::numeric_limits<double>::infinity());
    }

    static constexpr LogValue zero() { return LogValue(); }
    static constexpr LogValue one() { return from_log(0.0); }

    constexpr double log() const { return log_; }
    constexpr bool is_zero() const { return std::isinf(log_) && log_ < 0.0; }

    double value() const { return is_zero() ? 0.0 : std::exp(log_); }

    friend constexpr LogValue operator*(LogValue a, LogValue b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return from_log(a.log_ + b.log_);
    }

    LogValue& operator*=(LogValue o) { return *this = *this * o; }

    /// v^p for p >= 0; zero^0 == one by convention.
    LogValue pow(double p) const {
        if (p == 0.0) return one();
        if (is_zero()) return zero();
        return from_log(log_ * p);
    }

    friend constexpr bool operator==(LogValue a, LogValue b) { return a.log_ == b.log_; }
    friend constexpr bool operator<(LogValue a, LogValue b) { return a.log_ < b.log_; }
    friend constexpr bool operator>(LogValue a, LogValue b) { return b < a; }
    friend constexpr bool operator<=(LogValue a, LogValue b) { return !(b < a); }
    friend constexpr bool operator>=(LogValue a, LogValue b) { return !(a < b); }

private:
    double log_;
};

} // namespace wtp
