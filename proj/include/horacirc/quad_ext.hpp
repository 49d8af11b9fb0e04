#pragma once

#include <string>

#include "horacirc/rational.hpp"

namespace horacirc {

/// Element u + v*sqrt(D) of Q(sqrt D). D travels with every value and
/// mixed-D arithmetic is refused rather than coerced.
class QuadExt {
public:
    QuadExt(Rational u, Rational v, Integer discriminant);

    /// The embedding of a rational into Q(sqrt D).
    static QuadExt from_rational(Rational u, Integer discriminant);

    const Rational& u() const { return u_; }
    const Rational& v() const { return v_; }
    const Integer& discriminant() const { return d_; }

    /// u^2 - D v^2; zero exactly when the value is zero in the field
    /// (or, for square D, when it is a zero divisor of the formal pair).
    Rational norm() const;
    QuadExt conjugate() const;
    bool is_zero() const;

    /// The exact rational value; throws IrrationalResidue unless v = 0 or D
    /// is a perfect square.
    Rational demote() const;

    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

    /// Structural equality; values with different D are never equal.
    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.d_ == y.d_ && x.u_ == y.u_ && x.v_ == y.v_;
    }

    std::string to_string() const;

private:
    void require_same_field(const QuadExt& o) const;

    Rational u_;
    Rational v_;
    Integer d_;
};

QuadExt pow(const QuadExt& x, unsigned long e);

/// true when D = s^2 for some integer s >= 0; `root` receives s.
bool is_perfect_square(const Integer& d, Integer* root = nullptr);

}  // namespace horacirc
