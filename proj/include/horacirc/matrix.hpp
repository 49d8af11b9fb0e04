#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "horacirc/rational.hpp"

namespace horacirc {

/// Position and the two differing values of the first mismatch between two
/// same-shape matrices (row-major scan).
struct EntryMismatch {
    std::size_t row = 0;
    std::size_t col = 0;
    Rational actual;
    Rational expected;
};

/// Row-major rows x cols grid of exact rationals.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    /// Block-diagonal [top 0; 0 bottom].
    static DenseMatrix direct_sum(const DenseMatrix& top, const DenseMatrix& bottom);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> row(std::size_t i) const;
    DenseMatrix transpose() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Exact dense product; throws DimensionMismatch.
DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y);

/// First entry where `actual` differs from `expected`, or nullopt when equal.
/// Throws DimensionMismatch on shape mismatch.
std::optional<EntryMismatch> first_mismatch(const DenseMatrix& actual, const DenseMatrix& expected);

}  // namespace horacirc
