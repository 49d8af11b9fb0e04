#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace horacirc {

using Integer = mpz_class;

/// Exact rational number, always held in canonical form: positive
/// denominator, gcd(|num|, den) = 1, zero as 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);

    /// Parses "n" or "n/d" in base 10; any sign placement accepted on input,
    /// the result is canonical.
    static Rational parse(std::string_view text);

    Integer num() const { return value_.get_num(); }
    Integer den() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational reciprocal() const;
    Rational abs() const;

    /// Canonical "n" or "n/d".
    std::string to_string() const;
    double to_double() const { return value_.get_d(); }
    /// Natural log of |x|; finite for any nonzero value regardless of magnitude.
    double log_abs() const;
    /// max(bits(num), bits(den)).
    std::size_t bit_size() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational x, const Rational& y) { return x += y; }
    friend Rational operator-(Rational x, const Rational& y) { return x -= y; }
    friend Rational operator*(Rational x, const Rational& y) { return x *= y; }
    friend Rational operator/(Rational x, const Rational& y) { return x /= y; }
    friend Rational operator-(const Rational& x);

    friend bool operator==(const Rational& x, const Rational& y) { return cmp(x.value_, y.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        const int c = cmp(x.value_, y.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) {}

    mpq_class value_;
};

/// x^e for e >= 0 by binary powering; 0^0 = 1.
Rational pow(const Rational& x, unsigned long e);

std::ostream& operator<<(std::ostream& os, const Rational& x);

/// Integer lcm / gcd helpers used by the fraction-free paths.
Integer lcm(const Integer& x, const Integer& y);

}  // namespace horacirc
