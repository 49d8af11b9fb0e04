#include <doctest.h>

#include <cmath>

#include "horacirc/errors.hpp"
#include "horacirc/oracle.hpp"
#include "test_support.hpp"

using namespace horacirc;
using horacirc::testing::Gen;
using horacirc::testing::laplace_det;
using horacirc::testing::row_of;

TEST_CASE("bareiss_det examples") {
    CHECK(bareiss_det(DenseMatrix::identity(4)) == Rational(1));
    CHECK(bareiss_det(materialize(Circulant(row_of({"1", "1", "2"})))) == Rational(4));
    CHECK(bareiss_det(materialize(Circulant(row_of({"1", "1", "2", "3"})))) == Rational(-35));
    CHECK(bareiss_det(materialize(Circulant(row_of({"1", "1", "1"})))) == Rational(0));
    CHECK(bareiss_det(DenseMatrix::from_rows({row_of({"0", "1"}), row_of({"1", "0"})})) == Rational(-1));
    CHECK_THROWS_AS(bareiss_det(DenseMatrix(2, 3)), DimensionMismatch);
}

TEST_CASE("bareiss_det agrees with cofactor expansion") {
    Gen g(1234);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int it = 0; it < 8; ++it) {
            DenseMatrix m = g.matrix(n);
            if (it % 4 == 0 && n > 1) {
                // force a zero leading pivot
                m(0, 0) = Rational(0);
            }
            const Rational det = bareiss_det(m);
            CHECK(det == laplace_det(m));
            CHECK(det == bareiss_det(m.transpose()));
        }
    }
}

TEST_CASE("gauss_inverse examples") {
    CHECK(gauss_inverse(materialize(Circulant(row_of({"1", "1", "2"})))) ==
          materialize(Circulant(row_of({"-1/4", "3/4", "-1/4"}))));
    CHECK(gauss_inverse(materialize(Circulant(row_of({"1", "1", "2", "3"})))) ==
          materialize(Circulant(row_of({"-11/35", "17/35", "-4/35", "3/35"}))));
    CHECK(gauss_inverse(DenseMatrix::identity(5)) == DenseMatrix::identity(5));
    CHECK_THROWS_AS(gauss_inverse(materialize(Circulant(row_of({"1", "1", "1"})))), SingularMatrix);
}

TEST_CASE("gauss_inverse is an exact two-sided inverse and preserves circulant structure") {
    Gen g(77);
    for (std::size_t n = 1; n <= 7; ++n) {
        for (int it = 0; it < 5; ++it) {
            const Circulant c = g.circulant(n);
            const DenseMatrix m = materialize(c);
            if (laplace_det(m).is_zero()) continue;
            const DenseMatrix inv = gauss_inverse(m);
            CHECK(inv * m == DenseMatrix::identity(n));
            CHECK(m * inv == DenseMatrix::identity(n));
            CHECK(as_circulant(inv).has_value());
            if (n <= 5) CHECK(inv == horacirc::testing::adjugate_inverse(m));
        }
    }
}

TEST_CASE("dft eigenvalues") {
    const auto l = dft_eigenvalues(Circulant(row_of({"1", "1", "2", "3"})));
    REQUIRE(l.size() == 4);
    CHECK(l[0].real() == doctest::Approx(7.0));
    CHECK(l[1].real() == doctest::Approx(-1.0));
    CHECK(l[1].imag() == doctest::Approx(-2.0));
    CHECK(l[2].real() == doctest::Approx(-1.0));
    CHECK(std::abs(l[2].imag()) < 1e-12);
    CHECK(l[3].imag() == doctest::Approx(2.0));

    const auto single = dft_eigenvalues(Circulant(row_of({"5/2"})));
    CHECK(single.size() == 1);
    CHECK(single[0].real() == 2.5);

    const auto ones = dft_eigenvalues(Circulant(row_of({"1", "1", "1"})));
    CHECK(ones[0].real() == doctest::Approx(3.0));
    CHECK(std::abs(ones[1]) < 1e-12);
    CHECK(std::abs(ones[2]) < 1e-12);
}

TEST_CASE("dft eigenvalues match direct polynomial evaluation at the roots of unity") {
    Gen g(3);
    for (std::size_t n = 1; n <= 12; ++n) {
        const Circulant c = g.circulant(n);
        const auto l = dft_eigenvalues(c);
        for (std::size_t j = 0; j < n; ++j) {
            const auto ref = horacirc::testing::poly_at_root(c.first_row(), j);
            CHECK(std::abs(std::complex<long double>(l[j]) - ref) < 1e-11L);
        }
    }
}

TEST_CASE("dft_det") {
    const auto d = dft_det(Circulant(row_of({"1", "1", "2", "3"})));
    CHECK(d.real() == doctest::Approx(-35.0).epsilon(1e-12));
    CHECK(std::abs(d.imag()) < 1e-9 * 35.0);
    CHECK(std::abs(dft_det(Circulant(row_of({"1", "1", "1"})))) < 1e-9);
    CHECK(dft_det(Circulant(row_of({"1", "3", "4"}))).real() == doctest::Approx(56.0).epsilon(1e-12));

    const LogDet ld = dft_log_det(Circulant(row_of({"1", "1", "2", "3"})));
    CHECK(ld.sign == -1);
    CHECK(ld.log_abs == doctest::Approx(std::log(35.0)));
    const LogDet exact = exact_log_det(Rational(-35));
    CHECK(exact.sign == -1);
    CHECK(exact.log_abs == doctest::Approx(std::log(35.0)));
}

TEST_CASE("dft_inverse") {
    const auto a = dft_inverse(Circulant(row_of({"1", "1", "2"})));
    CHECK(a[0] == doctest::Approx(-0.25));
    CHECK(a[1] == doctest::Approx(0.75));
    CHECK(a[2] == doctest::Approx(-0.25));

    const auto e = dft_inverse(Circulant(row_of({"1", "0", "0", "0", "0"})));
    CHECK(e[0] == doctest::Approx(1.0));
    for (std::size_t k = 1; k < e.size(); ++k) CHECK(std::abs(e[k]) < 1e-15);

    CHECK_THROWS_AS(dft_inverse(Circulant(row_of({"1", "1", "1"}))), NumericallySingular);
    CHECK_THROWS_AS(dft_inverse(Circulant(row_of({"0", "0"}))), NumericallySingular);
    // a looser threshold flags a merely ill-conditioned input
    CHECK_THROWS_AS(dft_inverse(Circulant(row_of({"1", "1", "2"})), 0.5), NumericallySingular);
}
