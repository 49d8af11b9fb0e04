#include "horacirc/matrix.hpp"

#include <string>

#include "horacirc/errors.hpp"

namespace horacirc {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    DenseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged rows in matrix literal");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

DenseMatrix DenseMatrix::direct_sum(const DenseMatrix& top, const DenseMatrix& bottom) {
    DenseMatrix m(top.rows() + bottom.rows(), top.cols() + bottom.cols());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) m(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < bottom.cols(); ++j) m(top.rows() + i, top.cols() + j) = bottom(i, j);
    return m;
}

std::vector<Rational> DenseMatrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.cols() != y.rows())
        throw DimensionMismatch("matrix product: " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                                " times " + std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
    DenseMatrix out(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const Rational& xik = x(i, k);
            if (xik.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) {
                if (!y(k, j).is_zero()) out(i, j) += xik * y(k, j);
            }
        }
    }
    return out;
}

std::optional<EntryMismatch> first_mismatch(const DenseMatrix& actual, const DenseMatrix& expected) {
    if (actual.rows() != expected.rows() || actual.cols() != expected.cols())
        throw DimensionMismatch("shape mismatch in comparison");
    for (std::size_t i = 0; i < actual.rows(); ++i)
        for (std::size_t j = 0; j < actual.cols(); ++j)
            if (actual(i, j) != expected(i, j)) return EntryMismatch{i, j, actual(i, j), expected(i, j)};
    return std::nullopt;
}

}  // namespace horacirc
