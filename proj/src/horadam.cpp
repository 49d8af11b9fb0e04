#include "horacirc/horadam.hpp"

#include <tuple>

#include "horacirc/errors.hpp"

namespace horacirc {

std::optional<HoradamParams> HoradamParams::preset(std::string_view name) {
    if (name == "fibonacci") return fibonacci();
    if (name == "lucas") return lucas();
    if (name == "pell") return pell();
    if (name == "pell-lucas") return pell_lucas();
    return std::nullopt;
}

std::string HoradamParams::to_string() const {
    return "(a=" + a.get_str() + ", b=" + b.get_str() + "; p=" + p.get_str() + ", q=" + q.get_str() + ")";
}

bool operator<(const HoradamParams& x, const HoradamParams& y) {
    return std::tie(x.a, x.b, x.p, x.q) < std::tie(y.a, y.b, y.p, y.q);
}

std::vector<Rational> seq(const HoradamParams& params, std::size_t up_to) {
    std::vector<Integer> w;
    w.reserve(up_to + 1);
    w.push_back(params.a);
    if (up_to >= 1) w.push_back(params.b);
    for (std::size_t k = 2; k <= up_to; ++k) w.push_back(params.p * w[k - 1] + params.q * w[k - 2]);

    std::vector<Rational> out;
    out.reserve(w.size());
    for (const auto& x : w) out.emplace_back(x);
    return out;
}

QuadExt binet(const HoradamParams& params, std::size_t k) {
    const Integer d = params.discriminant();
    if (d == 0) throw RepeatedRoot("repeated root: p^2 + 4q = 0 for " + params.to_string());

    const Rational half(Integer(1), Integer(2));
    const Rational p(params.p);
    const QuadExt alpha(p * half, half, d);
    const QuadExt beta(p * half, -half, d);
    const QuadExt a = QuadExt::from_rational(Rational(params.a), d);
    const QuadExt b = QuadExt::from_rational(Rational(params.b), d);

    const QuadExt coeff_alpha = b - a * beta;
    const QuadExt coeff_beta = a * alpha - b;
    return (coeff_alpha * pow(alpha, k) + coeff_beta * pow(beta, k)) / (alpha - beta);
}

}  // namespace horacirc
