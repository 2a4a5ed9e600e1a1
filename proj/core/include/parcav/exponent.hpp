#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace parcav {

// Extended real exponent: a finite value or one of the symbolic endpoints
// -inf / +inf.  Exactly one of the three states holds; NaN is rejected.
class Exponent {
public:
    constexpr Exponent() : v_(1.0) {}
    Exponent(double v) : v_(v) {
        if (std::isnan(v)) throw std::invalid_argument("Exponent: NaN is not an exponent");
    }

    static Exponent pos_inf() { return Exponent(std::numeric_limits<double>::infinity()); }
    static Exponent neg_inf() { return Exponent(-std::numeric_limits<double>::infinity()); }

    bool finite() const { return std::isfinite(v_); }
    bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
    bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

    // Underlying value; +-infinity for the symbolic endpoints.
    double value() const { return v_; }

    friend bool operator==(Exponent a, Exponent b) { return a.v_ == b.v_; }
    friend bool operator<(Exponent a, Exponent b) { return a.v_ < b.v_; }
    friend bool operator<=(Exponent a, Exponent b) { return a.v_ <= b.v_; }
    friend bool operator>(Exponent a, Exponent b) { return a.v_ > b.v_; }
    friend bool operator>=(Exponent a, Exponent b) { return a.v_ >= b.v_; }

    std::string str() const {
        if (is_pos_inf()) return "inf";
        if (is_neg_inf()) return "-inf";
        return std::to_string(v_);
    }

private:
    double v_;
};

} // namespace parcav
