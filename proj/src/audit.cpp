#include "horacirc/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <thread>
#include <tuple>

#include "horacirc/circulant.hpp"
#include "horacirc/decomposition.hpp"
#include "horacirc/errors.hpp"
#include "horacirc/oracle.hpp"

namespace horacirc::audit {

namespace {

constexpr std::array<FormulaId, kFormulaCount> kAll = {
    FormulaId::EQ3_DET,        FormulaId::DET_VIA_GN, FormulaId::LEMMA_PRINTED, FormulaId::LEMMA_CORRECTED,
    FormulaId::THM2_W1,        FormulaId::THM2_W2,    FormulaId::THM2_W3,       FormulaId::THM2_W4,
    FormulaId::THM2_W5,        FormulaId::THM2_WN,    FormulaId::DFT_AK_PRINTED, FormulaId::KL_SIGN,
    FormulaId::HESSENBERG_M,   FormulaId::STRUCTURED_INV,
};

constexpr std::array<const char*, kFormulaCount> kNames = {
    "EQ3_DET", "DET_VIA_GN", "LEMMA_PRINTED", "LEMMA_CORRECTED", "THM2_W1", "THM2_W2",      "THM2_W3",
    "THM2_W4", "THM2_W5",    "THM2_WN",       "DFT_AK_PRINTED",  "KL_SIGN", "HESSENBERG_M", "STRUCTURED_INV",
};

std::string where(const EntryMismatch& e) {
    return "(" + std::to_string(e.row) + "," + std::to_string(e.col) + "): got " + e.actual.to_string() +
           ", expected " + e.expected.to_string();
}

// Shared oracle data of one (params, n) unit.
struct Unit {
    CaseKey base;
    FormulaContext ctx;
    DenseMatrix w;
    Rational det;
    std::optional<DenseMatrix> inverse;  // nullopt when singular
    std::optional<std::string> oracle_integrity;
};

Unit make_unit(const HoradamParams& params, std::size_t n, Convention convention) {
    Unit u;
    u.base.params = params;
    u.base.n = n;
    u.ctx = make_context(params, n, convention);
    const Circulant c(u.ctx.first_row());
    u.w = materialize(c);
    u.det = bareiss_det(u.w);
    if (u.det.is_zero()) return u;

    u.inverse = gauss_inverse(u.w);
    if (const auto miss = first_mismatch(*u.inverse * u.w, DenseMatrix::identity(n)))
        u.oracle_integrity = "oracle inverse times W is not I at " + where(*miss);
    else if (!as_circulant(*u.inverse))
        u.oracle_integrity = "oracle inverse of a circulant is not circulant";
    else {
        const Rational row_sum = c.row_sum();
        Rational inv_sum;
        for (const auto& x : u.inverse->row(0)) inv_sum += x;
        if (!row_sum.is_zero() && inv_sum != row_sum.reciprocal())
            u.oracle_integrity = "oracle inverse row sum " + inv_sum.to_string() + " != 1/" + row_sum.to_string();
    }
    return u;
}

AuditReport blank(const Unit& u, FormulaId id) {
    AuditReport r;
    r.key = u.base;
    r.key.formula = id;
    return r;
}

void compare_scalar(AuditReport& r, Rational printed, Rational oracle) {
    r.discrepancy = printed - oracle;
    r.match = std::get<Rational>(r.discrepancy).is_zero();
    r.printed = std::move(printed);
    r.oracle = std::move(oracle);
}

void compare_matrix(AuditReport& r, DenseMatrix printed, DenseMatrix oracle) {
    const auto miss = first_mismatch(printed, oracle);
    r.match = !miss.has_value();
    if (miss) r.discrepancy = *miss;
    r.printed = std::move(printed);
    r.oracle = std::move(oracle);
}

void compare_vector(AuditReport& r, std::vector<Rational> printed, std::vector<Rational> oracle) {
    r.match = true;
    for (std::size_t i = 0; i < printed.size(); ++i) {
        if (printed[i] != oracle[i]) {
            r.match = false;
            r.discrepancy = EntryMismatch{0, i, printed[i], oracle[i]};
            break;
        }
    }
    r.printed = std::move(printed);
    r.oracle = std::move(oracle);
}

AuditReport eval_eq3(const Unit& u) {
    AuditReport r = blank(u, FormulaId::EQ3_DET);
    const Rational printed = eval_eq3_printed(u.ctx);
    const Rational horner = det_eq3(u.ctx);
    if (printed != horner)
        r.integrity = "dual evaluation disagrees: term-by-term " + printed.to_string() + " vs Horner " +
                      horner.to_string();
    compare_scalar(r, printed, u.det);
    return r;
}

AuditReport eval_det_via_gn(const Unit& u) {
    AuditReport r = blank(u, FormulaId::DET_VIA_GN);
    compare_scalar(r, det_via_gn(u.ctx), u.det);
    return r;
}

AuditReport eval_lemma(const Unit& u, FormulaId id) {
    AuditReport r = blank(u, id);
    const std::size_t m = u.ctx.n - 2;
    const Rational diag = u.ctx.W(1) - u.ctx.W(u.ctx.n + 1);
    const Rational sub = u.ctx.q * (u.ctx.W(0) - u.ctx.W(u.ctx.n));
    if (diag.is_zero()) throw DegenerateCase("W1 - W_{n+1}");
    DenseMatrix printed =
        id == FormulaId::LEMMA_PRINTED ? eval_lemma_printed(diag, sub, m) : bidiag_inverse(diag, sub, m);
    const DenseMatrix a = bidiag(diag, sub, m);
    DenseMatrix oracle = gauss_inverse(a);
    if (first_mismatch(a * oracle, DenseMatrix::identity(m)))
        r.integrity = "oracle inverse of the bidiagonal block fails A * A^-1 = I";
    compare_matrix(r, std::move(printed), std::move(oracle));
    return r;
}

AuditReport eval_thm2(const Unit& u, FormulaId id) {
    AuditReport r = blank(u, id);
    Rational printed = eval_thm2_entry(u.ctx, id);
    if (!u.inverse) throw SingularMatrix();
    const std::size_t n = u.ctx.n;
    std::size_t pos = 0;
    switch (id) {
        case FormulaId::THM2_W1: pos = 1; break;
        case FormulaId::THM2_W2: pos = 2; break;
        case FormulaId::THM2_W3: pos = 3; break;
        case FormulaId::THM2_W4: pos = 4; break;
        case FormulaId::THM2_W5: pos = 5; break;
        default: pos = n; break;
    }
    r.integrity = u.oracle_integrity;
    compare_scalar(r, std::move(printed), (*u.inverse)(0, pos - 1));
    if (id == FormulaId::THM2_WN && n > 6)
        r.note = "w_6 .. w_" + std::to_string(n - 1) + " have no printed closed form and are not evaluated";
    return r;
}

AuditReport eval_dft_ak(const Unit& u) {
    AuditReport r = blank(u, FormulaId::DFT_AK_PRINTED);
    if (!u.inverse) throw SingularMatrix();
    std::vector<double> printed = eval_dft_ak_printed(u.ctx.first_row());
    std::vector<double> oracle;
    double scale = 0.0;
    for (const auto& x : u.inverse->row(0)) {
        oracle.push_back(x.to_double());
        scale = std::max(scale, std::fabs(oracle.back()));
    }
    r.match = true;
    for (std::size_t k = 0; k < printed.size(); ++k) {
        const double rel = std::fabs(printed[k] - oracle[k]) / scale;
        if (!(rel <= kDftRelTol)) {
            r.match = false;
            r.discrepancy = FloatMismatch{k, printed[k], oracle[k], rel};
            break;
        }
    }
    r.integrity = u.oracle_integrity;
    r.printed = std::move(printed);
    r.oracle = std::move(oracle);
    return r;
}

AuditReport eval_kl(const Unit& u) {
    AuditReport r = blank(u, FormulaId::KL_SIGN);
    const HessenbergScalars s = scalars(u.ctx);
    const TransformPair kl = transformation_matrices(u.ctx, s);
    const KLDeterminants d = kl_determinants(kl.K, kl.L, u.w, kl.K * u.w * kl.L);
    if (!d.multiplicative())
        r.integrity = "det(KWL) = " + d.det_m.to_string() + " != det(K) det(W) det(L)";
    const Rational claimed(det_kl_sign(u.ctx.n));
    compare_vector(r, {claimed, claimed, Rational(1)}, {d.det_k, d.det_l, d.det_k * d.det_l});
    return r;
}

AuditReport eval_hessenberg(const Unit& u) {
    AuditReport r = blank(u, FormulaId::HESSENBERG_M);
    const HessenbergScalars s = scalars(u.ctx);
    const TransformPair kl = transformation_matrices(u.ctx, s);
    DenseMatrix m = kl.K * u.w * kl.L;
    const HessenbergReport check = verify_hessenberg(m, u.ctx, s);
    std::string failing;
    for (const auto& region : check.regions) {
        if (region.pass) continue;
        if (!failing.empty()) failing += "; ";
        failing += region.region + " first differs at " + where(*region.first_offending);
    }
    if (!failing.empty()) r.note = failing;
    compare_matrix(r, printed_hessenberg(u.ctx, s), std::move(m));
    return r;
}

AuditReport eval_structured(const Unit& u) {
    AuditReport r = blank(u, FormulaId::STRUCTURED_INV);
    if (!u.inverse) throw SingularMatrix();
    StructuredInverse si = structured_inverse(u.ctx);
    if (!si.valid) {
        r.note = si.first_failure ? "invalid: P*W first differs from I at " + where(*si.first_failure)
                                  : std::string("invalid: P*W = I but P is not circulant");
    } else if (si.P != *u.inverse) {
        r.integrity = "structured inverse reported valid but differs from the oracle inverse";
    }
    if (u.oracle_integrity) r.integrity = u.oracle_integrity;
    compare_matrix(r, std::move(si.P), *u.inverse);
    return r;
}

AuditReport evaluate(const Unit& u, FormulaId id) {
    try {
        switch (id) {
            case FormulaId::EQ3_DET: return eval_eq3(u);
            case FormulaId::DET_VIA_GN: return eval_det_via_gn(u);
            case FormulaId::LEMMA_PRINTED:
            case FormulaId::LEMMA_CORRECTED: return eval_lemma(u, id);
            case FormulaId::DFT_AK_PRINTED: return eval_dft_ak(u);
            case FormulaId::KL_SIGN: return eval_kl(u);
            case FormulaId::HESSENBERG_M: return eval_hessenberg(u);
            case FormulaId::STRUCTURED_INV: return eval_structured(u);
            default: return eval_thm2(u, id);
        }
    } catch (const Error& e) {
        AuditReport r = blank(u, id);
        r.skipped = std::string("precondition failed: ") + e.what();
        return r;
    }
}

}  // namespace

const std::array<FormulaId, kFormulaCount>& all_formulas() { return kAll; }

const char* to_string(FormulaId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<FormulaId> parse_formula(std::string_view name) {
    for (std::size_t i = 0; i < kFormulaCount; ++i)
        if (name == kNames[i]) return kAll[i];
    return std::nullopt;
}

bool is_thm2(FormulaId id) {
    return id == FormulaId::THM2_W1 || id == FormulaId::THM2_W2 || id == FormulaId::THM2_W3 ||
           id == FormulaId::THM2_W4 || id == FormulaId::THM2_W5 || id == FormulaId::THM2_WN;
}

bool operator<(const CaseKey& x, const CaseKey& y) {
    if (!(x.params == y.params)) return x.params < y.params;
    return std::tie(x.n, x.formula) < std::tie(y.n, y.formula);
}

bool operator==(const CaseKey& x, const CaseKey& y) {
    return x.params == y.params && x.n == y.n && x.formula == y.formula;
}

Rational eval_eq3_printed(const FormulaContext& ctx) {
    const std::size_t n = ctx.n;
    if (n < 3) throw InvalidArgument("n >= 3 required");
    const Rational& b = ctx.b;
    const Rational& a = ctx.a;
    const Rational& q = ctx.q;
    Rational total = (pow(b, 2) - ctx.W(2) * ctx.W(n)) * pow(b - ctx.W(n + 1), n - 2);
    for (std::size_t k = 2; k <= n - 1; ++k) {
        total += (b * ctx.W(k + 1) - ctx.W(2) * ctx.W(k)) * pow(b - ctx.W(n + 1), k - 2) *
                 pow(q * ctx.W(n) - q * a, n - k);
    }
    return total;
}

Rational eval_thm2_entry(const FormulaContext& ctx, FormulaId which) {
    const std::size_t n = ctx.n;
    if (!is_thm2(which)) throw InvalidArgument(std::string(to_string(which)) + " is not an inverse entry");
    if (which == FormulaId::THM2_W4 && n < 4) throw InvalidArgument("w_4 needs n >= 4");
    if (which == FormulaId::THM2_W5 && n < 5) throw InvalidArgument("w_5 needs n >= 5");

    const HessenbergScalars s = scalars(ctx);  // W1 and W1 - W_{n+1} nonzero past here
    if (s.gn.is_zero()) throw SingularMatrix("singular matrix: g_n = 0");
    const Rational& g = s.gn;
    const Rational& p = ctx.p;
    const Rational& q = ctx.q;
    auto W = [&ctx](std::size_t k) -> const Rational& { return ctx.W(k); };
    const Rational d = W(1) - W(n + 1);
    // W_j - W_2 W_{j-1} / W_1, the recurring bracket
    auto bracket = [&](std::size_t j) { return W(j) - W(2) * W(j - 1) / W(1); };
    const Rational c = (W(0) - W(n)) / d;
    const Rational x = (W(n + 2) - W(2)) / d;
    const Rational y = (W(0) - W(n)) * (W(n + 2) - W(2)) / (d * d) - Rational(1);
    const Rational front = Rational(1) / (g * d);

    switch (which) {
        case FormulaId::THM2_W1: {
            Rational sum;
            for (std::size_t k = 1; k <= n - 2; ++k)
                sum += pow(q, k) * bracket(n - k) * pow(c, k - 1) * (Rational(1) + p * c);
            return Rational(1) / g - front * (p * bracket(n) + sum);
        }
        case FormulaId::THM2_W2: {
            Rational sum;
            for (std::size_t k = 1; k <= n - 2; ++k) sum += pow(q * (W(0) - W(n)) / d, k - 1) * bracket(n - k + 1);
            return -W(2) / (g * W(1)) - front * sum;
        }
        case FormulaId::THM2_W3: return (W(1) * W(3) - W(2) * W(2)) / (g * W(1) * d);
        case FormulaId::THM2_W4: return front * (bracket(4) + bracket(3) * x);
        case FormulaId::THM2_W5: return q * front * (bracket(3) * y);
        default: {
            Rational sum;
            for (std::size_t k = 2; k <= n - 2; ++k) sum += pow(q, k - 1) * bracket(n - k) * pow(c, k - 2) * y;
            return front * (bracket(n) + bracket(n - 1) * x + sum);
        }
    }
}

DenseMatrix eval_lemma_printed(const Rational& diag, const Rational& sub, std::size_t m) {
    if (diag.is_zero()) throw DegenerateCase("diagonal");
    DenseMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) out(i, j) = pow(sub, i - j) / pow(diag, i - j + 1);
    return out;
}

std::vector<double> eval_dft_ak_printed(const std::vector<Rational>& first_row) {
    const auto lambda = dft_eigenvalues(Circulant(first_row));
    const auto a = inverse_dft(lambda);
    std::vector<double> out;
    out.reserve(a.size());
    for (const auto& z : a) out.push_back(z.real());
    return out;
}

GridSpec GridSpec::default_grid() {
    GridSpec g;
    g.params = enumerate(-2, 2, -2, 2, {1, 2, 3}, {1, 2, 3});
    return g;
}

std::vector<HoradamParams> GridSpec::enumerate(long a_min, long a_max, long b_min, long b_max,
                                               const std::vector<long>& p_values, const std::vector<long>& q_values) {
    std::vector<long> ps = p_values;
    std::vector<long> qs = q_values;
    std::sort(ps.begin(), ps.end());
    std::sort(qs.begin(), qs.end());
    std::vector<HoradamParams> out;
    for (long a = a_min; a <= a_max; ++a)
        for (long b = b_min; b <= b_max; ++b) {
            if (b == 0) continue;
            for (long p : ps)
                for (long q : qs) out.push_back({a, b, p, q});
        }
    return out;
}

std::vector<AuditReport> evaluate_unit(const HoradamParams& params, std::size_t n,
                                       const std::vector<FormulaId>& formulas, Convention convention) {
    const Unit u = make_unit(params, n, convention);
    std::vector<FormulaId> ids = formulas.empty() ? std::vector<FormulaId>(kAll.begin(), kAll.end()) : formulas;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<AuditReport> out;
    out.reserve(ids.size());
    for (FormulaId id : ids) out.push_back(evaluate(u, id));
    return out;
}

std::vector<AuditReport> run_grid(const GridSpec& spec, unsigned jobs) {
    std::vector<HoradamParams> params = spec.params;
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    std::vector<std::pair<std::size_t, std::size_t>> units;  // (param index, n)
    for (std::size_t i = 0; i < params.size(); ++i)
        for (std::size_t n = spec.n_min; n <= spec.n_max; ++n) units.emplace_back(i, n);

    std::vector<std::vector<AuditReport>> slots(units.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < units.size(); k = next.fetch_add(1))
            slots[k] = evaluate_unit(params[units[k].first], units[k].second, spec.formulas, spec.convention);
    };

    if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(units.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
    }

    std::vector<AuditReport> out;
    for (auto& s : slots)
        for (auto& r : s) out.push_back(std::move(r));
    std::stable_sort(out.begin(), out.end(),
                     [](const AuditReport& x, const AuditReport& y) { return x.key < y.key; });
    return out;
}

namespace {

std::string describe(FormulaId id) {
    switch (id) {
        case FormulaId::DFT_AK_PRINTED:
            return "inverse coefficients a_k = (1/n) sum_j lambda_j w^{-jk} rebuild C itself; "
                   "lambda_j must be replaced by 1/lambda_j to obtain C^{-1}";
        case FormulaId::LEMMA_PRINTED:
            return "bidiagonal inverse entries need the alternating sign (-sub)^{i-j}; "
                   "without it A * A^{-1} has 2 sub/diag on the first subdiagonal";
        case FormulaId::STRUCTURED_INV:
            return "T (H^{-1} (+) A^{-1}) K built from the displayed U does not invert W";
        case FormulaId::HESSENBERG_M:
            return "K W L differs from the displayed Hessenberg form";
        case FormulaId::KL_SIGN:
            return "det(K), det(L) deviate from the claimed n mod 4 sign pattern";
        default:
            return std::string(to_string(id)) + " disagrees with the exact oracle";
    }
}

}  // namespace

AuditSummary summarize(const std::vector<AuditReport>& reports) {
    AuditSummary s;
    for (const auto& r : reports) {
        FormulaTotals& t = s.totals[static_cast<std::size_t>(r.key.formula)];
        if (r.skipped)
            ++t.skipped;
        else if (r.match)
            ++t.match;
        else {
            ++t.mismatch;
            if (!t.first_counterexample) t.first_counterexample = r;
        }
        if (r.integrity) {
            s.integrity_violations.push_back(std::string(to_string(r.key.formula)) + " " + r.key.params.to_string() +
                                             " n=" + std::to_string(r.key.n) + ": " + *r.integrity);
        }
    }

    auto add = [&s](FormulaId id, std::string label) {
        const FormulaTotals& t = s.of(id);
        if (t.mismatch == 0) return false;
        s.errata.push_back({std::move(label), id, describe(id), t.mismatch, t.match + t.mismatch,
                            t.first_counterexample->key});
        return true;
    };
    add(FormulaId::DFT_AK_PRINTED, "E1");
    add(FormulaId::LEMMA_PRINTED, "E2");
    std::size_t next_id = 3;
    for (FormulaId id : kAll) {
        if (id == FormulaId::DFT_AK_PRINTED || id == FormulaId::LEMMA_PRINTED) continue;
        if (add(id, "E" + std::to_string(next_id))) ++next_id;
    }
    return s;
}

}  // namespace horacirc::audit
