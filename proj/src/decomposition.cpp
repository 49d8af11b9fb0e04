#include "horacirc/decomposition.hpp"

#include "horacirc/errors.hpp"
#include "horacirc/oracle.hpp"

namespace horacirc {

namespace {

DenseMatrix make_k(const FormulaContext& ctx) {
    const std::size_t n = ctx.n;
    DenseMatrix k(n, n);
    k(0, 0) = Rational(1);
    k(1, 0) = -ctx.W(2) / ctx.W(1);
    k(1, n - 1) = Rational(1);
    for (std::size_t i = 2; i < n; ++i) {
        k(i, n - i) += Rational(1);
        k(i, (n - i + 1) % n) -= ctx.p;
        k(i, (n - i + 2) % n) -= ctx.q;
    }
    return k;
}

DenseMatrix make_l(const FormulaContext& ctx, const Rational& ratio) {
    const std::size_t n = ctx.n;
    DenseMatrix l(n, n);
    l(0, 0) = Rational(1);
    Rational power(1);
    for (std::size_t i = n - 1; i >= 1; --i) {
        l(i, 1) = power;
        power *= ratio;
    }
    for (std::size_t i = 1; i + 2 <= n; ++i) l(i, n - i) = Rational(1);
    return l;
}

DenseMatrix make_u(const FormulaContext& ctx, const HessenbergScalars& s) {
    const std::size_t n = ctx.n;
    const Rational& w1 = ctx.W(1);
    const Rational& w2 = ctx.W(2);
    DenseMatrix u = DenseMatrix::identity(n);
    u(0, 1) = -s.gn_prime / w1;
    const Rational lead = s.gn_prime / (s.gn * w1);
    for (std::size_t j = 3; j <= n; ++j)
        u(0, j - 1) = lead * (w2 * ctx.W(n - j + 2) / w1 - ctx.W(n - j + 3)) - ctx.W(n - j + 2) / w1;
    for (std::size_t c = 2; c < n; ++c) u(1, c) = ctx.W(n - c + 2) / s.gn - w2 * ctx.W(n - c + 1) / (s.gn * w1);
    return u;
}

DenseMatrix diag2(const Rational& x, const Rational& y) {
    DenseMatrix h(2, 2);
    h(0, 0) = x;
    h(1, 1) = y;
    return h;
}

}  // namespace

DenseMatrix printed_hessenberg(const FormulaContext& ctx, const HessenbergScalars& s) {
    const std::size_t n = ctx.n;
    const Rational& w1 = ctx.W(1);
    const Rational w2_over_w1 = ctx.W(2) / w1;
    DenseMatrix m(n, n);
    m(0, 0) = w1;
    m(0, 1) = s.gn_prime;
    for (std::size_t c = 2; c < n; ++c) m(0, c) = ctx.W(n + 1 - c);
    m(1, 1) = s.gn;
    for (std::size_t c = 2; c < n; ++c) m(1, c) = ctx.W(n + 2 - c) - w2_over_w1 * ctx.W(n + 1 - c);
    for (std::size_t i = 2; i < n; ++i) {
        m(i, i) = s.diag;
        if (i + 1 < n) m(i + 1, i) = s.sub;
    }
    return m;
}

TransformPair transformation_matrices(const FormulaContext& ctx, const HessenbergScalars& s) {
    return {make_k(ctx), make_l(ctx, s.ratio)};
}

DecompositionBundle build(const FormulaContext& ctx) {
    DecompositionBundle b;
    b.scalars = scalars(ctx);  // throws DegenerateCase
    if (b.scalars.gn.is_zero()) throw SingularMatrix("singular matrix: g_n = 0 so det(W) = 0");

    const std::size_t n = ctx.n;
    b.K = make_k(ctx);
    b.L = make_l(ctx, b.scalars.ratio);
    b.U = make_u(ctx, b.scalars);
    b.H = diag2(ctx.W(1), b.scalars.gn);
    b.A = bidiag(b.scalars.diag, b.scalars.sub, n - 2);
    b.W = materialize(Circulant(ctx.first_row()));
    b.M = b.K * b.W * b.L;

    b.hessenberg_ok = b.M == printed_hessenberg(ctx, b.scalars);
    b.direct_sum_failure = first_mismatch(b.M * b.U, DenseMatrix::direct_sum(b.H, b.A));
    b.direct_sum_ok = !b.direct_sum_failure.has_value();
    return b;
}

DecompositionBundle build(const HoradamParams& params, std::size_t n) { return build(make_context(params, n)); }

bool HessenbergReport::all_pass() const {
    for (const auto& r : regions)
        if (!r.pass) return false;
    return true;
}

HessenbergReport verify_hessenberg(const DecompositionBundle& bundle, const FormulaContext& ctx) {
    return verify_hessenberg(bundle.M, ctx, bundle.scalars);
}

HessenbergReport verify_hessenberg(const DenseMatrix& m, const FormulaContext& ctx, const HessenbergScalars& s) {
    const DenseMatrix expected = printed_hessenberg(ctx, s);
    const std::size_t n = ctx.n;

    HessenbergReport report;
    for (const char* name : {"row0", "row1", "diagonal", "subdiagonal", "zeros"})
        report.regions.push_back(RegionCheck{name, true, std::nullopt});
    auto region_of = [](std::size_t i, std::size_t j) -> std::size_t {
        if (i == 0) return 0;
        if (i == 1) return 1;
        if (i == j) return 2;
        if (i == j + 1 && j >= 2) return 3;
        return 4;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j) == expected(i, j)) continue;
            RegionCheck& r = report.regions[region_of(i, j)];
            if (r.pass) {
                r.pass = false;
                r.first_offending = EntryMismatch{i, j, m(i, j), expected(i, j)};
            }
        }
    }
    return report;
}

int det_kl_sign(std::size_t n) {
    const std::size_t r = n % 4;
    return (r == 1 || r == 2) ? 1 : -1;
}

KLDeterminants kl_determinants(const DecompositionBundle& bundle) {
    return kl_determinants(bundle.K, bundle.L, bundle.W, bundle.M);
}

KLDeterminants kl_determinants(const DenseMatrix& k, const DenseMatrix& l, const DenseMatrix& w, const DenseMatrix& m) {
    return {bareiss_det(k), bareiss_det(l), bareiss_det(w), bareiss_det(m)};
}

StructuredInverse structured_inverse(const FormulaContext& ctx) {
    const DecompositionBundle b = build(ctx);
    const std::size_t n = ctx.n;

    const DenseMatrix t = b.L * b.U;
    const DenseMatrix h_inv = diag2(ctx.W(1).reciprocal(), b.scalars.gn.reciprocal());
    const DenseMatrix a_inv = bidiag_inverse(b.scalars.diag, b.scalars.sub, n - 2);

    StructuredInverse out;
    out.P = t * DenseMatrix::direct_sum(h_inv, a_inv) * b.K;
    out.first_failure = first_mismatch(out.P * b.W, DenseMatrix::identity(n));
    const auto circ = as_circulant(out.P);
    out.circulant = circ.has_value();
    out.valid = !out.first_failure && out.circulant;
    if (out.valid) out.inverse = *circ;
    return out;
}

StructuredInverse structured_inverse(const HoradamParams& params, std::size_t n) {
    return structured_inverse(make_context(params, n));
}

}  // namespace horacirc
