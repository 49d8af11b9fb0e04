#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "horacirc/circulant.hpp"
#include "horacirc/closed_form.hpp"
#include "horacirc/matrix.hpp"

namespace horacirc {

/// The transformation matrices of the Hessenberg reduction M = K W L and the
/// block form K W L U = H (+) A, transcribed entry by entry (0-based):
///
///   K: row 0 = e_0; row 1 has -W_2/W_1 in column 0 and 1 in column n-1;
///      row i >= 2 has 1, -p, -q in columns n-i, n-i+1, n-i+2 (mod n).
///      The displayed corner rows (-q ... 1 -p), (0 ... -p -q),
///      (0 0 1 -p -q ...), (0 1 -p -q ...) fix this cyclic pattern.
///   L: row 0 = e_0; column 1 holds r^{n-1-i} in row i >= 1 with
///      r = q (W_n - W_0) / (W_1 - W_{n+1}); rows 1..n-2 also carry a 1 on
///      the anti-diagonal, column n-i.
///   U: identity below row 1; U(0,1) = -g'_n / W_1,
///      U(0,j-1) = (g'_n / (g_n W_1)) (W_2 W_{n-j+2} / W_1 - W_{n-j+3}) - W_{n-j+2} / W_1
///      for 1-based j = 3..n; U(1,c) = W_{n-c+2}/g_n - W_2 W_{n-c+1} / (g_n W_1)
///      for c = 2..n-1.
///   H = diag(W_1, g_n); A = bidiag(W_1 - W_{n+1}, q (W_0 - W_n)) of order n-2.
struct DecompositionBundle {
    DenseMatrix K;
    DenseMatrix L;
    DenseMatrix U;
    DenseMatrix H;
    DenseMatrix A;
    DenseMatrix W;  // materialized circulant
    DenseMatrix M;  // K * W * L, computed
    HessenbergScalars scalars;

    /// M equals the displayed Hessenberg form entry for entry.
    bool hessenberg_ok = false;
    /// M * U equals H (+) A; `direct_sum_failure` locates the first miss.
    bool direct_sum_ok = false;
    std::optional<EntryMismatch> direct_sum_failure;
};

struct TransformPair {
    DenseMatrix K;
    DenseMatrix L;
};

/// K and L alone; needs only W_1 != 0 and W_1 - W_{n+1} != 0.
TransformPair transformation_matrices(const FormulaContext& ctx, const HessenbergScalars& s);

/// Throws DegenerateCase (W1, W1 - W_{n+1}) or SingularMatrix (g_n = 0, which
/// forces det W = 0 once the other two are nonzero).
DecompositionBundle build(const FormulaContext& ctx);
DecompositionBundle build(const HoradamParams& params, std::size_t n);

/// The displayed Hessenberg target, built from the scalars alone.
DenseMatrix printed_hessenberg(const FormulaContext& ctx, const HessenbergScalars& s);

struct RegionCheck {
    std::string region;
    bool pass = true;
    std::optional<EntryMismatch> first_offending;
};

struct HessenbergReport {
    std::vector<RegionCheck> regions;  // row0, row1, diagonal, subdiagonal, zeros
    bool all_pass() const;
};

HessenbergReport verify_hessenberg(const DecompositionBundle& bundle, const FormulaContext& ctx);
HessenbergReport verify_hessenberg(const DenseMatrix& m, const FormulaContext& ctx, const HessenbergScalars& s);

/// Claimed det(K) = det(L) = +1 for n = 1, 2 (mod 4), -1 for n = 0, 3 (mod 4).
int det_kl_sign(std::size_t n);

struct KLDeterminants {
    Rational det_k;
    Rational det_l;
    Rational det_w;
    Rational det_m;
    /// det(M) == det(K) det(W) det(L)
    bool multiplicative() const { return det_m == det_k * det_w * det_l; }
};

KLDeterminants kl_determinants(const DecompositionBundle& bundle);
KLDeterminants kl_determinants(const DenseMatrix& k, const DenseMatrix& l, const DenseMatrix& w, const DenseMatrix& m);

struct StructuredInverse {
    /// P = T (H^{-1} (+) A^{-1}) K with T = L U.
    DenseMatrix P;
    /// P W == I and P is circulant.
    bool valid = false;
    bool circulant = false;
    /// First entry where P W differs from the identity.
    std::optional<EntryMismatch> first_failure;
    /// Set only when valid.
    std::optional<Circulant> inverse;
};

/// Runs the structured pipeline and validates it exactly. Never falls back
/// to another inverse: a failed identity is reported, not repaired.
StructuredInverse structured_inverse(const FormulaContext& ctx);
StructuredInverse structured_inverse(const HoradamParams& params, std::size_t n);

}  // namespace horacirc
