#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "horacirc/quad_ext.hpp"
#include "horacirc/rational.hpp"

namespace horacirc {

/// Parameters of W_k = p W_{k-1} + q W_{k-2}, W_0 = a, W_1 = b.
struct HoradamParams {
    Integer a;
    Integer b;
    Integer p;
    Integer q;

    /// p^2 + 4q, the discriminant of x^2 - p x - q.
    Integer discriminant() const { return p * p + 4 * q; }

    static HoradamParams fibonacci() { return {0, 1, 1, 1}; }
    static HoradamParams lucas() { return {2, 1, 1, 1}; }
    static HoradamParams pell() { return {0, 1, 2, 1}; }
    static HoradamParams pell_lucas() { return {2, 2, 2, 1}; }

    /// Looks up `fibonacci`, `lucas`, `pell` or `pell-lucas`.
    static std::optional<HoradamParams> preset(std::string_view name);

    std::string to_string() const;

    friend bool operator==(const HoradamParams&, const HoradamParams&) = default;
};

/// Lexicographic order on (a, b, p, q).
bool operator<(const HoradamParams& x, const HoradamParams& y);

/// [W_0, ..., W_up_to] by the recurrence; one pass.
std::vector<Rational> seq(const HoradamParams& params, std::size_t up_to);

/// W_k as an element of Q(sqrt D), D = p^2 + 4q, via the Binet form
/// (A alpha^k + B beta^k) / (alpha - beta). Throws RepeatedRoot when D = 0.
QuadExt binet(const HoradamParams& params, std::size_t k);

}  // namespace horacirc
