#include "horacirc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "horacirc/errors.hpp"

namespace horacirc {

namespace {

void require_square(const DenseMatrix& m, const char* what) {
    if (!m.is_square())
        throw DimensionMismatch(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
}

// w^m for m in [0, n), evaluated from the reduced index so that the angle
// stays in [0, 2 pi).
std::vector<std::complex<double>> roots_of_unity(std::size_t n) {
    std::vector<std::complex<double>> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        w[m] = {std::cos(theta), std::sin(theta)};
    }
    return w;
}

}  // namespace

Rational bareiss_det(const DenseMatrix& m) {
    require_square(m, "bareiss_det");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);

    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer row_lcm = 1;
        for (std::size_t j = 0; j < n; ++j) row_lcm = lcm(row_lcm, m(i, j).den());
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).num() * (row_lcm / m(i, j).den());
        scale *= row_lcm;
    }

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && a[pivot][k] == 0) ++pivot;
            if (pivot == n) return Rational(0);
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Integer det = a[n - 1][n - 1];
    if (sign < 0) det = -det;
    return Rational(det, scale);
}

DenseMatrix gauss_inverse(const DenseMatrix& m) {
    require_square(m, "gauss_inverse");
    const std::size_t n = m.rows();
    DenseMatrix a = m;
    DenseMatrix inv = DenseMatrix::identity(n);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a(pivot, k).is_zero()) ++pivot;
        if (pivot == n) throw SingularMatrix();
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pivot, j));
                std::swap(inv(k, j), inv(pivot, j));
            }
        }
        const Rational pinv = a(k, k).reciprocal();
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) *= pinv;
            inv(k, j) *= pinv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) continue;
            const Rational f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                if (!a(k, j).is_zero()) a(i, j) -= f * a(k, j);
                if (!inv(k, j).is_zero()) inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

std::vector<std::complex<double>> dft_eigenvalues(const Circulant& c) {
    const std::size_t n = c.n();
    const auto w = roots_of_unity(n);
    std::vector<double> coeff(n);
    for (std::size_t k = 0; k < n; ++k) coeff[k] = c.first_row()[k].to_double();

    std::vector<std::complex<double>> lambda(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += coeff[k] * w[(j * k) % n];
        lambda[j] = s;
    }
    return lambda;
}

std::complex<double> dft_det(const Circulant& c) {
    std::complex<double> det = 1.0;
    for (const auto& l : dft_eigenvalues(c)) det *= l;
    return det;
}

LogDet dft_log_det(const Circulant& c) {
    LogDet out{1, 0.0};
    double phase = 0.0;
    for (const auto& l : dft_eigenvalues(c)) {
        const double mag = std::abs(l);
        if (mag == 0.0) return LogDet{0, -INFINITY};
        out.log_abs += std::log(mag);
        phase += std::arg(l);
    }
    // Real input: the phase sum is a multiple of pi up to rounding.
    out.sign = std::cos(phase) >= 0.0 ? 1 : -1;
    return out;
}

LogDet exact_log_det(const Rational& det) {
    if (det.is_zero()) return LogDet{0, -INFINITY};
    return LogDet{det.sign(), det.log_abs()};
}

std::vector<std::complex<double>> inverse_dft(const std::vector<std::complex<double>>& values) {
    const std::size_t n = values.size();
    const auto w = roots_of_unity(n);
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s = 0.0;
        // w^{-jk} = w^{(n - jk mod n) mod n}
        for (std::size_t j = 0; j < n; ++j) s += values[j] * w[(n - (j * k) % n) % n];
        out[k] = s / static_cast<double>(n);
    }
    return out;
}

std::vector<double> dft_inverse(const Circulant& c, double threshold) {
    auto lambda = dft_eigenvalues(c);
    double max_mag = 0.0;
    double min_mag = INFINITY;
    for (const auto& l : lambda) {
        max_mag = std::max(max_mag, std::abs(l));
        min_mag = std::min(min_mag, std::abs(l));
    }
    if (max_mag == 0.0 || min_mag <= threshold * max_mag)
        throw NumericallySingular("numerically singular: min |lambda| = " + std::to_string(min_mag) +
                                  ", max |lambda| = " + std::to_string(max_mag));
    for (auto& l : lambda) l = 1.0 / l;
    const auto a = inverse_dft(lambda);
    std::vector<double> out(a.size());
    std::transform(a.begin(), a.end(), out.begin(), [](const std::complex<double>& z) { return z.real(); });
    return out;
}

}  // namespace horacirc
