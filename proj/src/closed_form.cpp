#include "horacirc/closed_form.hpp"

#include "horacirc/errors.hpp"

namespace horacirc {

const char* to_string(Convention c) { return c == Convention::PlusQ ? "plus-q" : "minus-q"; }

FormulaContext make_context(const HoradamParams& params, std::size_t n, Convention convention) {
    FormulaContext ctx;
    ctx.n = n;
    ctx.a = Rational(params.a);
    ctx.b = Rational(params.b);
    ctx.p = Rational(params.p);
    ctx.q = Rational(params.q);
    ctx.sequence_params = params;
    if (convention == Convention::MinusQ) ctx.sequence_params.q = -params.q;
    ctx.w = seq(ctx.sequence_params, n + 2);
    return ctx;
}

namespace {

void require_order(std::size_t n) {
    if (n < 3) throw InvalidArgument("closed forms need n >= 3, got n = " + std::to_string(n));
}

}  // namespace

Rational det_eq3(const FormulaContext& ctx) {
    const std::size_t n = ctx.n;
    require_order(n);
    const Rational& b = ctx.b;
    const Rational d = b - ctx.W(n + 1);
    const Rational s = ctx.q * ctx.W(n) - ctx.q * ctx.a;

    // Homogeneous degree-(n-2) form in (d, s): leading coefficient on d^{n-2},
    // then k = n-1 down to 2 contributes d^{k-2} s^{n-k}.
    Rational acc = b * b - ctx.W(2) * ctx.W(n);
    Rational s_pow(1);
    for (std::size_t k = n - 1; k >= 2; --k) {
        s_pow *= s;
        acc = acc * d + (b * ctx.W(k + 1) - ctx.W(2) * ctx.W(k)) * s_pow;
    }
    return acc;
}

Rational det_eq3(const HoradamParams& params, std::size_t n) { return det_eq3(make_context(params, n)); }

HessenbergScalars scalars(const FormulaContext& ctx) {
    const std::size_t n = ctx.n;
    require_order(n);
    const Rational& w1 = ctx.W(1);
    if (w1.is_zero()) throw DegenerateCase("W1");
    HessenbergScalars out;
    out.diag = w1 - ctx.W(n + 1);
    if (out.diag.is_zero()) throw DegenerateCase("W1 - W_{n+1}");
    out.sub = ctx.q * (ctx.W(0) - ctx.W(n));
    out.ratio = ctx.q * (ctx.W(n) - ctx.W(0)) / out.diag;

    const Rational w2_over_w1 = ctx.W(2) / w1;

    // g'_n = sum_{k=2}^{n} W_k r^{n-k}
    Rational gp;
    for (std::size_t k = 2; k <= n; ++k) gp = gp * out.ratio + ctx.W(k);
    out.gn_prime = gp;

    // g_n = W_1 - W_2 W_n / W_1 + sum_{k=2}^{n-1} (W_{k+1} - W_2 W_k / W_1) r^{n-k}
    Rational tail;
    for (std::size_t k = 2; k <= n - 1; ++k) tail = tail * out.ratio + (ctx.W(k + 1) - w2_over_w1 * ctx.W(k));
    out.gn = w1 - w2_over_w1 * ctx.W(n) + tail * out.ratio;
    return out;
}

HessenbergScalars scalars(const HoradamParams& params, std::size_t n) { return scalars(make_context(params, n)); }

Rational det_via_gn(const FormulaContext& ctx) {
    const HessenbergScalars s = scalars(ctx);
    return ctx.b * pow(ctx.b - ctx.W(ctx.n + 1), ctx.n - 2) * s.gn;
}

Rational det_via_gn(const HoradamParams& params, std::size_t n) { return det_via_gn(make_context(params, n)); }

DenseMatrix bidiag(const Rational& diag, const Rational& sub, std::size_t m) {
    DenseMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        a(i, i) = diag;
        if (i + 1 < m) a(i + 1, i) = sub;
    }
    return a;
}

DenseMatrix bidiag_inverse(const Rational& diag, const Rational& sub, std::size_t m) {
    if (diag.is_zero()) throw DegenerateCase("diagonal");
    DenseMatrix inv(m, m);
    const Rational first = diag.reciprocal();
    const Rational step = -sub / diag;
    for (std::size_t j = 0; j < m; ++j) {
        Rational x = first;
        for (std::size_t i = j; i < m; ++i) {
            inv(i, j) = x;
            x *= step;
        }
    }
    return inv;
}

}  // namespace horacirc
