#pragma once

#include <cstddef>
#include <vector>

#include "horacirc/horadam.hpp"
#include "horacirc/matrix.hpp"
#include "horacirc/rational.hpp"

namespace horacirc {

/// Which recurrence sign the literal q of a formula refers to. Under
/// `PlusQ` the sequence is W_k = p W_{k-1} + q W_{k-2}; under `MinusQ` it is
/// W_k = p W_{k-1} - q W_{k-2} while the formulas still read the same q.
enum class Convention { PlusQ, MinusQ };

const char* to_string(Convention c);

/// The symbols a closed form reads: the literal (a, b, p, q) and the
/// sequence W_0 .. W_{n+2} that goes with them.
struct FormulaContext {
    std::size_t n = 0;
    Rational a;
    Rational b;
    Rational p;
    Rational q;
    std::vector<Rational> w;

    const Rational& W(std::size_t k) const { return w.at(k); }
    /// (W_1, ..., W_n).
    std::vector<Rational> first_row() const { return {w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(n) + 1}; }
    /// The parameters that generate `w` under the +q recurrence.
    HoradamParams sequence_params;
};

FormulaContext make_context(const HoradamParams& params, std::size_t n, Convention convention = Convention::PlusQ);

/// Scalars of the Hessenberg reduction: g_n, g'_n, and the diagonal and
/// subdiagonal of the bidiagonal block.
struct HessenbergScalars {
    Rational gn;
    Rational gn_prime;
    Rational diag;  // W_1 - W_{n+1}
    Rational sub;   // q (W_0 - W_n)
    Rational ratio; // q (W_n - W_0) / (W_1 - W_{n+1})
};

/// (b^2 - W_2 W_n)(b - W_{n+1})^{n-2}
///   + sum_{k=2}^{n-1} (b W_{k+1} - W_2 W_k)(b - W_{n+1})^{k-2}(q W_n - q a)^{n-k}
/// in O(n) multiplications. Throws InvalidArgument for n < 3.
Rational det_eq3(const FormulaContext& ctx);
Rational det_eq3(const HoradamParams& params, std::size_t n);

/// Throws DegenerateCase naming "W1" or "W1 - W_{n+1}" when it vanishes.
HessenbergScalars scalars(const FormulaContext& ctx);
HessenbergScalars scalars(const HoradamParams& params, std::size_t n);

/// b (b - W_{n+1})^{n-2} g_n.
Rational det_via_gn(const FormulaContext& ctx);
Rational det_via_gn(const HoradamParams& params, std::size_t n);

/// Inverse of the m x m lower-bidiagonal matrix with `diag` on the diagonal
/// and `sub` on the subdiagonal: entry (i, j), i >= j, is
/// (-sub)^{i-j} / diag^{i-j+1}. Throws DegenerateCase when diag = 0.
DenseMatrix bidiag_inverse(const Rational& diag, const Rational& sub, std::size_t m);

/// The m x m lower-bidiagonal matrix itself.
DenseMatrix bidiag(const Rational& diag, const Rational& sub, std::size_t m);

}  // namespace horacirc
