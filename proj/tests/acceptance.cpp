// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "horacirc/audit.hpp"
#include "horacirc/bench.hpp"
#include "horacirc/circulant.hpp"
#include "horacirc/closed_form.hpp"
#include "horacirc/decomposition.hpp"
#include "horacirc/errors.hpp"
#include "horacirc/horadam.hpp"
#include "horacirc/json_io.hpp"
#include "horacirc/oracle.hpp"
#include "test_support.hpp"

using namespace horacirc;
using horacirc::testing::Gen;
using horacirc::testing::R;

namespace {

constexpr double kGridBudgetSecs = 120.0;
constexpr std::size_t kInverseMaxN = 8;
constexpr std::size_t kLemmaMaxM = 12;
constexpr int kLemmaPairs = 100;
constexpr std::size_t kSignMinN = 3;
constexpr std::size_t kSignMaxN = 12;
constexpr std::size_t kBinetMaxK = 100;
constexpr double kDftDetRelTol = 1e-9;
constexpr std::size_t kDftDetMaxN = 32;
constexpr long kDftEntryBound = 1000000;
constexpr double kDftInvAbsTol = 1e-9;
constexpr std::size_t kDftInvMaxN = 16;
constexpr std::size_t kBenchN = 64;
constexpr double kBenchBudgetSecs = 300.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

const audit::GridSpec& grid() {
    static const audit::GridSpec g = audit::GridSpec::default_grid();
    return g;
}

std::string label(const HoradamParams& hp, std::size_t n) { return hp.to_string() + " n=" + std::to_string(n); }

Rational bareiss_of(const HoradamParams& hp, std::size_t n) { return bareiss_det(materialize(from_params(hp, n))); }

// 1 ---------------------------------------------------------------------------

Outcome det_formula() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t checked = 0;
    for (const auto& hp : grid().params)
        for (std::size_t n = grid().n_min; n <= grid().n_max; ++n) {
            o.require(det_eq3(hp, n) == bareiss_of(hp, n), "det_eq3 != bareiss at " + label(hp, n));
            ++checked;
        }
    const double secs = seconds_since(t0);
    o.require(secs < kGridBudgetSecs, "grid took " + std::to_string(secs) + " s");
    // anchors through the cofactor expansion, a third route
    const struct {
        HoradamParams hp;
        std::size_t n;
        long det;
    } anchors[] = {{HoradamParams::fibonacci(), 3, 4}, {HoradamParams::fibonacci(), 4, -35}, {HoradamParams::lucas(), 3, 56}};
    for (const auto& a : anchors) {
        const Rational expected(a.det);
        o.require(testing::laplace_det(materialize(from_params(a.hp, a.n))) == expected, "cofactor anchor " + label(a.hp, a.n));
        o.require(bareiss_of(a.hp, a.n) == expected, "bareiss anchor " + label(a.hp, a.n));
        o.require(det_eq3(a.hp, a.n) == expected, "closed-form anchor " + label(a.hp, a.n));
    }
    if (o.pass) o.detail = std::to_string(checked) + "/" + std::to_string(checked) + " exact, " + std::to_string(secs) + " s";
    return o;
}

// 2 ---------------------------------------------------------------------------

Outcome gn_chain() {
    Outcome o;
    std::size_t checked = 0;
    std::size_t excluded = 0;
    for (const auto& hp : grid().params)
        for (std::size_t n = grid().n_min; n <= grid().n_max; ++n) {
            const auto w = seq(hp, n + 1);
            const bool defined = !w[1].is_zero() && w[1] != w[n + 1];
            if (!defined) {
                ++excluded;
                bool threw = false;
                try {
                    (void)det_via_gn(hp, n);
                } catch (const DegenerateCase&) {
                    threw = true;
                }
                o.require(threw, "no degenerate error at " + label(hp, n));
                continue;
            }
            const Rational g = scalars(hp, n).gn;
            const Rational chain = w[1] * pow(w[1] - w[n + 1], static_cast<unsigned long>(n - 2)) * g;
            o.require(chain == bareiss_of(hp, n), "b (b - W_{n+1})^{n-2} g_n != det at " + label(hp, n));
            o.require(det_via_gn(hp, n) == chain, "det_via_gn disagrees with the chain at " + label(hp, n));
            ++checked;
        }
    o.require(scalars(HoradamParams::fibonacci(), 3).gn == Rational(-2), "g_3(Fibonacci) != -2");
    o.require(scalars(HoradamParams::fibonacci(), 4).gn == R("-35/16"), "g_4(Fibonacci) != -35/16");
    if (o.pass) o.detail = std::to_string(checked) + " exact, " + std::to_string(excluded) + " excluded (W1 = 0 or W1 = W_{n+1})";
    return o;
}

// 3 ---------------------------------------------------------------------------

Outcome inverse_oracle() {
    Outcome o;
    std::size_t checked = 0;
    std::size_t singular = 0;
    for (const auto& hp : grid().params)
        for (std::size_t n = grid().n_min; n <= kInverseMaxN; ++n) {
            const DenseMatrix w = materialize(from_params(hp, n));
            if (bareiss_det(w).is_zero()) {
                ++singular;
                continue;
            }
            const DenseMatrix inv = gauss_inverse(w);
            o.require(inv * w == DenseMatrix::identity(n), "inverse * W != I at " + label(hp, n));
            o.require(w * inv == DenseMatrix::identity(n), "W * inverse != I at " + label(hp, n));
            o.require(as_circulant(inv).has_value(), "inverse not circulant at " + label(hp, n));
            ++checked;
        }
    const auto first = [](std::vector<Rational> row) { return gauss_inverse(materialize(Circulant(std::move(row)))).row(0); };
    o.require(first({Rational(1), Rational(1), Rational(2)}) == testing::row_of({"-1/4", "3/4", "-1/4"}), "circ(1,1,2) anchor");
    o.require(first({Rational(1), Rational(1), Rational(2), Rational(3)}) ==
                  testing::row_of({"-11/35", "17/35", "-4/35", "3/35"}),
              "circ(1,1,2,3) anchor");
    if (o.pass) o.detail = std::to_string(checked) + " nonsingular cases exact, " + std::to_string(singular) + " singular skipped";
    return o;
}

// 4 ---------------------------------------------------------------------------

Outcome bidiagonal_lemma() {
    Outcome o;
    Gen gen(20240611);
    std::size_t residuals = 0;
    for (int t = 0; t < kLemmaPairs; ++t) {
        const Rational diag = gen.nonzero_rational();
        const Rational sub = t == 0 ? Rational(0) : gen.rational();
        for (std::size_t m = 1; m <= kLemmaMaxM; ++m) {
            const DenseMatrix a = bidiag(diag, sub, m);
            const DenseMatrix inv = bidiag_inverse(diag, sub, m);
            const DenseMatrix id = DenseMatrix::identity(m);
            o.require(a * inv == id && inv * a == id, "corrected inverse fails at m=" + std::to_string(m));

            // Without the alternating sign, diag*sub^k/diag^(k+1) + sub*sub^(k-1)/diag^k
            // gives 2 (sub/diag)^k at (j+k, j): 2 sub/diag on the first subdiagonal.
            const DenseMatrix prod = a * audit::eval_lemma_printed(diag, sub, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    Rational expected = i == j ? Rational(1) : Rational(0);
                    if (i > j) expected = Rational(2) * pow(sub / diag, static_cast<unsigned long>(i - j));
                    o.require(prod(i, j) == expected, "printed residual wrong at m=" + std::to_string(m));
                }
            for (std::size_t i = 0; i + 1 < m; ++i)
                o.require(prod(i + 1, i) == Rational(2) * sub / diag, "first subdiagonal residual at m=" + std::to_string(m));
            if (!sub.is_zero() && m > 1) ++residuals;
        }
    }
    if (o.pass)
        o.detail = std::to_string(kLemmaPairs) + " pairs x m=1.." + std::to_string(kLemmaMaxM) + " exact; residual 2 sub/diag seen in " +
                   std::to_string(residuals) + " printed products";
    return o;
}

// 5 ---------------------------------------------------------------------------

Outcome sign_pattern() {
    Outcome o;
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::string pattern;
    for (std::size_t n = kSignMinN; n <= kSignMaxN; ++n) pattern += (det_kl_sign(n) > 0 ? "+" : "-");
    for (const auto& hp : grid().params)
        for (std::size_t n = kSignMinN; n <= kSignMaxN; ++n) {
            std::optional<DecompositionBundle> b;
            try {
                b = build(make_context(hp, n));
            } catch (const Error&) {
                ++skipped;
                continue;
            }
            const KLDeterminants d = kl_determinants(*b);
            const Rational claimed(det_kl_sign(n));
            o.require(d.det_k == claimed, "det(K) off the n mod 4 pattern at " + label(hp, n));
            o.require(d.det_l == claimed, "det(L) off the n mod 4 pattern at " + label(hp, n));
            o.require(d.det_k * d.det_l == Rational(1), "det(K) det(L) != 1 at " + label(hp, n));
            o.require(d.multiplicative(), "det(M) != det(K) det(W) det(L) at " + label(hp, n));
            ++checked;
        }
    if (o.pass)
        o.detail = std::to_string(checked) + " cases, signs for n=3..12: " + pattern + ", " + std::to_string(skipped) +
                   " degenerate skipped";
    return o;
}

// 6 ---------------------------------------------------------------------------

Outcome binet_identity() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& hp : grid().params) {
        if (hp.discriminant() == 0) continue;
        const auto w = seq(hp, kBinetMaxK);
        for (std::size_t k = 0; k <= kBinetMaxK; ++k) {
            o.require(binet(hp, k).demote() == w[k], "binet != recurrence at " + hp.to_string() + " k=" + std::to_string(k));
            ++checked;
        }
    }
    if (o.pass) o.detail = std::to_string(checked) + " terms exact";
    return o;
}

// 7 ---------------------------------------------------------------------------

Outcome dft_oracle() {
    Outcome o;
    Gen gen(7);
    double worst_det = 0.0;
    std::size_t det_cases = 0;
    const auto check_det = [&](const Circulant& c, const std::string& where) {
        const Rational exact = bareiss_det(materialize(c));
        if (exact.is_zero()) return;
        const double rel = std::abs(dft_det(c).real() - exact.to_double()) / std::abs(exact.to_double());
        worst_det = std::max(worst_det, rel);
        o.require(rel < kDftDetRelTol, "dft det rel err " + std::to_string(rel) + " at " + where);
        ++det_cases;
    };
    for (std::size_t n = 1; n <= kDftDetMaxN; ++n) {
        for (int t = 0; t < 4; ++t) check_det(gen.integer_circulant(n, kDftEntryBound), "random n=" + std::to_string(n));
        for (const auto& hp : {HoradamParams::fibonacci(), HoradamParams::lucas(), HoradamParams::pell()}) {
            const auto w = seq(hp, n);
            bool small = true;
            for (const auto& x : w) small = small && x.abs() <= Rational(kDftEntryBound);
            if (small) check_det(from_params(hp, n), label(hp, n));
        }
    }

    double worst_inv = 0.0;
    std::size_t inv_cases = 0;
    const auto check_inv = [&](const Circulant& c, const std::string& where) {
        if (bareiss_det(materialize(c)).is_zero()) return;
        const auto exact = gauss_inverse(materialize(c)).row(0);
        const auto approx = dft_inverse(c);
        for (std::size_t k = 0; k < exact.size(); ++k) {
            const double err = std::abs(approx[k] - exact[k].to_double());
            worst_inv = std::max(worst_inv, err);
            o.require(err < kDftInvAbsTol, "dft inverse err " + std::to_string(err) + " at " + where);
        }
        ++inv_cases;
    };
    for (std::size_t n = 1; n <= kDftInvMaxN; ++n) {
        for (int t = 0; t < 4; ++t) check_inv(gen.integer_circulant(n, 1000), "random n=" + std::to_string(n));
        for (const auto& hp : {HoradamParams::fibonacci(), HoradamParams::lucas(), HoradamParams::pell(), HoradamParams::pell_lucas()})
            check_inv(from_params(hp, n), label(hp, n));
    }
    if (o.pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "det: %zu cases, worst rel err %.2e; inverse: %zu cases, worst abs err %.2e", det_cases,
                      worst_det, inv_cases, worst_inv);
        o.detail = buf;
    }
    return o;
}

// 8 ---------------------------------------------------------------------------

std::string dump(const std::vector<audit::AuditReport>& reports) {
    std::string out;
    for (const auto& r : reports) out += to_json(r).dump() + "\n";
    return out;
}

Outcome thm2_integrity() {
    using audit::FormulaId;
    Outcome o;
    audit::GridSpec spec = grid();
    const auto first = audit::run_grid(spec);
    const auto second = audit::run_grid(spec, 1);
    o.require(dump(first) == dump(second), "run_grid output differs between runs");
    const auto summary = audit::summarize(first);
    o.require(summary.consistent(), "audit integrity violations: " + std::to_string(summary.integrity_violations.size()));

    std::size_t mismatched = 0;
    std::size_t present = 0;
    for (const auto& r : first) {
        if (!(r.key.params == HoradamParams::fibonacci()) || r.key.n > 4 || !audit::is_thm2(r.key.formula)) continue;
        if (r.skipped) continue;
        const bool both = std::holds_alternative<Rational>(r.printed) && std::holds_alternative<Rational>(r.oracle);
        o.require(both, "printed/oracle value missing for Fibonacci n=" + std::to_string(r.key.n));
        ++present;
        if (!r.match) ++mismatched;
        if (r.key.n == 4 && r.key.formula == FormulaId::THM2_W3) {
            o.require(std::get<Rational>(r.printed) == R("4/35"), "printed w3 at Fibonacci n=4");
            o.require(std::get<Rational>(r.oracle) == R("-4/35"), "oracle w3 at Fibonacci n=4");
        }
    }
    o.require(present > 0, "no Fibonacci n in {3,4} entries");
    for (const auto& hp : grid().params)
        for (std::size_t n = grid().n_min; n <= grid().n_max; ++n) {
            const Circulant c = from_params(hp, n);
            if (bareiss_det(materialize(c)).is_zero()) continue;
            Rational sum;
            for (const auto& x : gauss_inverse(materialize(c)).row(0)) sum += x;
            o.require(sum == c.row_sum().reciprocal(), "sum w != 1 / sum W at " + label(hp, n));
        }
    if (o.pass)
        o.detail = "byte-identical reruns, integrity ok; Fibonacci n=3,4: " + std::to_string(mismatched) + "/" +
                   std::to_string(present) + " printed entries differ from the oracle (w3 at n=4: printed 4/35, oracle -4/35)";
    return o;
}

// 9 ---------------------------------------------------------------------------

Outcome structured_inverse_check() {
    Outcome o;
    std::size_t valid = 0;
    std::size_t invalid = 0;
    std::size_t skipped = 0;
    for (const auto& hp : grid().params)
        for (std::size_t n = grid().n_min; n <= grid().n_max; ++n) {
            std::optional<StructuredInverse> si;
            try {
                si = structured_inverse(hp, n);
            } catch (const Error&) {
                ++skipped;
                continue;
            }
            if (si->valid) {
                ++valid;
                o.require(si->P == gauss_inverse(materialize(from_params(hp, n))), "valid structured inverse wrong at " + label(hp, n));
            } else {
                ++invalid;
                o.require(si->first_failure.has_value() || !si->circulant, "invalid case without a diagnostic at " + label(hp, n));
            }
        }
    if (o.pass)
        o.detail = std::to_string(valid) + " valid (all equal the oracle), " + std::to_string(invalid) +
                   " invalid (all localized), " + std::to_string(skipped) + " preconditions failed";
    return o;
}

// 10 --------------------------------------------------------------------------

Outcome bench_run() {
    Outcome o;
    const auto t0 = Clock::now();
    const HoradamParams fib = HoradamParams::fibonacci();
    o.require(det_eq3(fib, kBenchN) == bareiss_of(fib, kBenchN), "closed != bareiss at n=64");
    bench::BenchOptions opt;
    opt.timeout_secs = bench::timeout_from_env(opt.timeout_secs);
    const bench::BenchReport r = bench::bench_det(fib, {kBenchN}, 5, opt);
    const auto* closed = r.find("closed", kBenchN);
    const auto* bareiss = r.find("bareiss", kBenchN);
    o.require(closed && bareiss, "bench rows missing");
    if (closed && bareiss) {
        o.require(closed->validated && bareiss->validated, "bench cells not validated");
        o.require(closed->value_digest == bareiss->value_digest, "bench digests differ");
    }
    double ratio = 0.0;
    bool recorded = false;
    for (const auto& x : r.ratios)
        if (x.n == kBenchN && x.slow == "bareiss" && x.fast == "closed") {
            ratio = x.ratio;
            recorded = true;
        }
    o.require(recorded && ratio > 0.0, "bareiss/closed ratio not recorded");
    const double secs = seconds_since(t0);
    o.require(secs < kBenchBudgetSecs, "bench took " + std::to_string(secs) + " s");
    if (o.pass) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "bareiss/closed = %.1fx at n=64, %.2f s", ratio, secs);
        o.detail = buf;
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"determinant formula equals Bareiss on the grid", det_formula},
        {"g_n chain equals Bareiss where defined", gn_chain},
        {"exact inverse oracle", inverse_oracle},
        {"corrected bidiagonal inverse", bidiagonal_lemma},
        {"det(K), det(L) sign pattern", sign_pattern},
        {"Binet form equals the recurrence", binet_identity},
        {"DFT oracle accuracy", dft_oracle},
        {"inverse-entry audit integrity", thm2_integrity},
        {"structured inverse validity", structured_inverse_check},
        {"benchmark at n = 64", bench_run},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed;
}
