#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace vmlab {

/// Thrown when input data violates a documented precondition.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an arithmetic operation on extended reals has no value,
/// e.g. (+inf) + (-inf).
class UndefinedArithmetic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A value in [-inf, +inf]. Finite values are never NaN.
class ExtReal {
public:
    constexpr ExtReal() = default;
    ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
        if (std::isnan(v)) throw UndefinedArithmetic("ExtReal cannot hold NaN");
    }

    static ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
    static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

    double value() const { return v_; }
    bool is_finite() const { return std::isfinite(v_); }
    bool is_pos_inf() const { return v_ == std::numeric_limits<double>::infinity(); }
    bool is_neg_inf() const { return v_ == -std::numeric_limits<double>::infinity(); }

    ExtReal pos_part() const { return v_ > 0 ? *this : ExtReal(0.0); }
    ExtReal neg_part() const { return v_ < 0 ? ExtReal(-v_) : ExtReal(0.0); }
    ExtReal abs() const { return ExtReal(std::fabs(v_)); }

    /// w * x with the measure-theoretic convention 0 * (+-inf) = 0; w must be >= 0.
    ExtReal weighted(double w) const {
        if (w == 0.0) return ExtReal(0.0);
        return ExtReal(w * v_);
    }

    ExtReal operator-() const { return ExtReal(-v_); }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
            throw UndefinedArithmetic("(+inf) + (-inf) is undefined");
        return ExtReal(a.v_ + b.v_);
    }
    friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

    friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }
    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }

    friend std::ostream& operator<<(std::ostream& os, ExtReal x) {
        if (x.is_pos_inf()) return os << "inf";
        if (x.is_neg_inf()) return os << "-inf";
        return os << x.v_;
    }

private:
    double v_ = 0.0;
};

inline ExtReal min(ExtReal a, ExtReal b) { return b < a ? b : a; }
inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }

/// Formats with 17 significant digits; infinities as "inf" / "-inf".
std::string format_number(ExtReal x);

/// Parses decimal strings plus "inf", "+inf", "-inf".
ExtReal parse_number(const std::string& text);

}  // namespace vmlab
