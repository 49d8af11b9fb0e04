#include "horacirc/quad_ext.hpp"

#include "horacirc/errors.hpp"

namespace horacirc {

QuadExt::QuadExt(Rational u, Rational v, Integer discriminant)
    : u_(std::move(u)), v_(std::move(v)), d_(std::move(discriminant)) {}

QuadExt QuadExt::from_rational(Rational u, Integer discriminant) {
    return QuadExt(std::move(u), Rational(0), std::move(discriminant));
}

Rational QuadExt::norm() const { return u_ * u_ - Rational(d_) * v_ * v_; }

QuadExt QuadExt::conjugate() const { return QuadExt(u_, -v_, d_); }

bool QuadExt::is_zero() const {
    if (v_.is_zero()) return u_.is_zero();
    Integer s;
    if (is_perfect_square(d_, &s)) return (u_ + v_ * Rational(s)).is_zero();
    return false;
}

Rational QuadExt::demote() const {
    if (v_.is_zero()) return u_;
    Integer s;
    if (is_perfect_square(d_, &s)) return u_ + v_ * Rational(s);
    throw IrrationalResidue("irrational residue: " + to_string());
}

void QuadExt::require_same_field(const QuadExt& o) const {
    if (d_ != o.d_)
        throw DiscriminantMismatch("mixed discriminants: D=" + d_.get_str() + " vs D=" + o.d_.get_str());
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    require_same_field(o);
    u_ += o.u_;
    v_ += o.v_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    require_same_field(o);
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    require_same_field(o);
    Rational u = u_ * o.u_ + Rational(d_) * v_ * o.v_;
    Rational v = u_ * o.v_ + o.u_ * v_;
    u_ = std::move(u);
    v_ = std::move(v);
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    require_same_field(o);
    const Rational n = o.norm();
    if (n.is_zero()) throw DivisionByZero();
    *this *= o.conjugate();
    u_ /= n;
    v_ /= n;
    return *this;
}

std::string QuadExt::to_string() const {
    return u_.to_string() + " + " + v_.to_string() + "*sqrt(" + d_.get_str() + ")";
}

QuadExt pow(const QuadExt& x, unsigned long e) {
    QuadExt result = QuadExt::from_rational(Rational(1), x.discriminant());
    QuadExt base = x;
    while (e > 0) {
        if (e & 1UL) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

bool is_perfect_square(const Integer& d, Integer* root) {
    if (d < 0) return false;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
    if (root != nullptr) mpz_sqrt(root->get_mpz_t(), d.get_mpz_t());
    return true;
}

}  // namespace horacirc
