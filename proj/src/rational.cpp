#include "horacirc/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "horacirc/errors.hpp"

namespace horacirc {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero();
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw ParseError("malformed rational: '" + std::string(whole) + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw ParseError("malformed rational: '" + std::string(whole) + "'");
    }
    Integer v(std::string(text.substr(i)), 10);
    return negative ? Integer(-v) : v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    return Rational(parse_integer(text.substr(0, slash), text),
                    parse_integer(text.substr(slash + 1), text));
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw DivisionByZero();
    mpq_class r;
    mpq_inv(r.get_mpq_t(), value_.get_mpq_t());
    return Rational(std::move(r));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

std::string Rational::to_string() const { return value_.get_str(10); }

double Rational::log_abs() const {
    if (is_zero()) return -INFINITY;
    long en = 0;
    long ed = 0;
    const double mn = mpz_get_d_2exp(&en, value_.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, value_.get_den_mpz_t());
    return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

std::size_t Rational::bit_size() const {
    const std::size_t bn = is_zero() ? 0 : mpz_sizeinbase(value_.get_num_mpz_t(), 2);
    const std::size_t bd = mpz_sizeinbase(value_.get_den_mpz_t(), 2);
    return bn > bd ? bn : bd;
}

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    value_ /= o.value_;
    return *this;
}

Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

Rational pow(const Rational& x, unsigned long e) {
    Rational result(1);
    Rational base = x;
    while (e > 0) {
        if (e & 1UL) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

Integer lcm(const Integer& x, const Integer& y) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

}  // namespace horacirc
