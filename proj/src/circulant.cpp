#include "horacirc/circulant.hpp"

#include "horacirc/errors.hpp"

namespace horacirc {

Circulant::Circulant(std::vector<Rational> first_row) : first_row_(std::move(first_row)) {
    if (first_row_.empty()) throw InvalidArgument("circulant dimension must be >= 1");
}

Rational Circulant::row_sum() const {
    Rational s;
    for (const auto& c : first_row_) s += c;
    return s;
}

Circulant from_params(const HoradamParams& params, std::size_t n) {
    if (n == 0) throw InvalidArgument("circulant dimension must be >= 1");
    auto w = seq(params, n);
    w.erase(w.begin());  // drop W_0
    return Circulant(std::move(w));
}

DenseMatrix materialize(const Circulant& c) {
    const std::size_t n = c.n();
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = c.at(i, j);
    return m;
}

Circulant conv_mul(const Circulant& x, const Circulant& y) {
    if (x.n() != y.n()) throw DimensionMismatch("conv_mul: circulants of different order");
    const std::size_t n = x.n();
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& xi = x.first_row()[i];
        if (xi.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) out[(i + j) % n] += xi * y.first_row()[j];
    }
    return Circulant(std::move(out));
}

std::optional<Circulant> as_circulant(const DenseMatrix& m) {
    if (!m.is_square() || m.rows() == 0) return std::nullopt;
    Circulant c(m.row(0));
    for (std::size_t i = 1; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != c.at(i, j)) return std::nullopt;
    return c;
}

}  // namespace horacirc
