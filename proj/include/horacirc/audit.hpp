#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "horacirc/closed_form.hpp"
#include "horacirc/horadam.hpp"
#include "horacirc/matrix.hpp"
#include "horacirc/rational.hpp"

namespace horacirc::audit {

enum class FormulaId {
    EQ3_DET,
    DET_VIA_GN,
    LEMMA_PRINTED,
    LEMMA_CORRECTED,
    THM2_W1,
    THM2_W2,
    THM2_W3,
    THM2_W4,
    THM2_W5,
    THM2_WN,
    DFT_AK_PRINTED,
    KL_SIGN,
    HESSENBERG_M,
    STRUCTURED_INV,
};

inline constexpr std::size_t kFormulaCount = 14;

const std::array<FormulaId, kFormulaCount>& all_formulas();
const char* to_string(FormulaId id);
std::optional<FormulaId> parse_formula(std::string_view name);
bool is_thm2(FormulaId id);

/// Relative tolerance for the floating DFT_AK_PRINTED comparison, measured
/// against the largest |entry| of the exact inverse row.
inline constexpr double kDftRelTol = 1e-9;

struct CaseKey {
    HoradamParams params;
    std::size_t n = 0;
    FormulaId formula = FormulaId::EQ3_DET;
};

/// Lexicographic on (a, b, p, q, n, formula).
bool operator<(const CaseKey& x, const CaseKey& y);
bool operator==(const CaseKey& x, const CaseKey& y);

struct FloatMismatch {
    std::size_t index = 0;
    double printed = 0.0;
    double oracle = 0.0;
    double rel_err = 0.0;
};

using Value = std::variant<std::monostate, Rational, std::vector<Rational>, DenseMatrix, std::vector<double>>;
/// Scalar cases carry printed - oracle (zero on a match); matrix and vector
/// cases carry the first differing entry, or monostate on a match.
using Discrepancy = std::variant<std::monostate, Rational, EntryMismatch, FloatMismatch>;

struct AuditReport {
    CaseKey key;
    Value printed;
    Value oracle;
    bool match = false;
    Discrepancy discrepancy;
    std::optional<std::string> skipped;
    /// Localized diagnostics and transcription remarks.
    std::optional<std::string> note;
    /// Set when an internal consistency check of this case failed: the two
    /// evaluation routes of EQ3_DET disagree, the oracle inverse fails its own
    /// identities, det(M) != det(K) det(W) det(L), or a valid structured
    /// inverse differs from the oracle.
    std::optional<std::string> integrity;
};

/// Closed-form determinant evaluated term by term with explicit powers.
/// Deliberately shares no code with closed_form::det_eq3.
Rational eval_eq3_printed(const FormulaContext& ctx);

/// Printed inverse entries w_1..w_5, w_n of circ(W_1..W_n). Throws
/// DegenerateCase / SingularMatrix / InvalidArgument on failed preconditions
/// (W_1 = 0, W_1 = W_{n+1}, g_n = 0, n < 4 for w_4, n < 5 for w_5).
Rational eval_thm2_entry(const FormulaContext& ctx, FormulaId which);

/// The non-alternating bidiagonal inverse:
/// entry (i, j), i >= j, = sub^{i-j} / diag^{i-j+1}.
DenseMatrix eval_lemma_printed(const Rational& diag, const Rational& sub, std::size_t m);

/// a_k = (1/n) sum_j lambda_j w^{-jk} without the reciprocal.
std::vector<double> eval_dft_ak_printed(const std::vector<Rational>& first_row);

struct GridSpec {
    std::vector<HoradamParams> params;
    std::size_t n_min = 3;
    std::size_t n_max = 10;
    /// Empty means every formula.
    std::vector<FormulaId> formulas;
    Convention convention = Convention::PlusQ;

    /// a in [-2,2], b in [-2,2] \ {0}, p, q in {1,2,3}, n in [3,10].
    static GridSpec default_grid();

    /// Cartesian product in lexicographic order; b = 0 is excluded.
    static std::vector<HoradamParams> enumerate(long a_min, long a_max, long b_min, long b_max,
                                                const std::vector<long>& p_values,
                                                const std::vector<long>& q_values);
};

/// Evaluates every (params, n, formula) case of the grid. `jobs` = 0 uses the
/// hardware concurrency. Output is sorted by case key and independent of
/// scheduling.
std::vector<AuditReport> run_grid(const GridSpec& spec, unsigned jobs = 0);

/// All reports of a single (params, n) unit, in formula order.
std::vector<AuditReport> evaluate_unit(const HoradamParams& params, std::size_t n,
                                       const std::vector<FormulaId>& formulas, Convention convention);

struct FormulaTotals {
    std::size_t match = 0;
    std::size_t mismatch = 0;
    std::size_t skipped = 0;
    std::size_t total() const { return match + mismatch + skipped; }
    std::optional<AuditReport> first_counterexample;
};

struct Erratum {
    std::string id;  // E1, E2, E3, ...
    FormulaId formula = FormulaId::EQ3_DET;
    std::string description;
    std::size_t mismatches = 0;
    std::size_t evaluated = 0;
    CaseKey example;
};

struct AuditSummary {
    std::array<FormulaTotals, kFormulaCount> totals{};
    std::vector<Erratum> errata;
    std::vector<std::string> integrity_violations;
    bool consistent() const { return integrity_violations.empty(); }

    const FormulaTotals& of(FormulaId id) const { return totals[static_cast<std::size_t>(id)]; }
};

AuditSummary summarize(const std::vector<AuditReport>& reports);

}  // namespace horacirc::audit
