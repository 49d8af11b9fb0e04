#pragma once

#include <complex>
#include <vector>

#include "horacirc/circulant.hpp"
#include "horacirc/matrix.hpp"
#include "horacirc/rational.hpp"

namespace horacirc {

/// Exact determinant by fraction-free (Bareiss) elimination. Rows are first
/// scaled to integers by the lcm of their denominators; the scale is divided
/// back out at the end. Singular input returns 0.
Rational bareiss_det(const DenseMatrix& m);

/// Exact inverse by Gauss-Jordan elimination over the rationals.
/// Throws SingularMatrix when no pivot exists.
DenseMatrix gauss_inverse(const DenseMatrix& m);

/// lambda_j = sum_k c_k w^{jk}, w = exp(2 pi i / n), by direct O(n^2) evaluation.
std::vector<std::complex<double>> dft_eigenvalues(const Circulant& c);

/// Product of the eigenvalues.
std::complex<double> dft_det(const Circulant& c);

/// Determinant as (sign, ln|det|); usable where |det| overflows a double.
struct LogDet {
    int sign = 0;  // -1, 0, +1
    double log_abs = 0.0;
};

LogDet dft_log_det(const Circulant& c);
LogDet exact_log_det(const Rational& det);

/// Default relative singularity threshold for `dft_inverse`.
inline constexpr double kDftSingularThreshold = 1e-12;

/// First row of C^{-1} from a_k = (1/n) sum_j lambda_j^{-1} w^{-jk}.
/// Throws NumericallySingular if min |lambda_j| <= threshold * max |lambda_j|.
std::vector<double> dft_inverse(const Circulant& c, double threshold = kDftSingularThreshold);

/// (1/n) sum_j values_j w^{-jk} for k = 0..n-1: the inverse DFT used by both
/// the corrected and the uncorrected inverse-coefficient formulas.
std::vector<std::complex<double>> inverse_dft(const std::vector<std::complex<double>>& values);

}  // namespace horacirc
