#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "horacirc/horadam.hpp"
#include "horacirc/matrix.hpp"
#include "horacirc/rational.hpp"

namespace horacirc {

/// n x n circulant stored by its first row (c_0, ..., c_{n-1}). Row i of the
/// dense form is the first row cyclically shifted right i places, so entry
/// (i, j) is c_{(j - i) mod n}.
///
/// Built from a Horadam prefix the first row is (W_1, ..., W_n): index k in
/// code holds W_{k+1}.
class Circulant {
public:
    explicit Circulant(std::vector<Rational> first_row);

    std::size_t n() const { return first_row_.size(); }
    const std::vector<Rational>& first_row() const { return first_row_; }

    const Rational& at(std::size_t i, std::size_t j) const { return first_row_[(j + n() - i % n()) % n()]; }
    Rational row_sum() const;

    friend bool operator==(const Circulant&, const Circulant&) = default;

private:
    std::vector<Rational> first_row_;
};

/// circ(W_1, ..., W_n). Throws InvalidArgument for n = 0.
Circulant from_params(const HoradamParams& params, std::size_t n);

DenseMatrix materialize(const Circulant& c);

/// Cyclic convolution of first rows; equals the dense product of the two
/// circulants. Throws DimensionMismatch on differing n.
Circulant conv_mul(const Circulant& x, const Circulant& y);

/// The circulant whose materialization is `m`, or nullopt if some row is not
/// the cyclic right shift of the row above it.
std::optional<Circulant> as_circulant(const DenseMatrix& m);

}  // namespace horacirc
