#include <doctest.h>

#include "horacirc/circulant.hpp"
#include "horacirc/errors.hpp"
#include "horacirc/json_io.hpp"
#include "test_support.hpp"

using namespace horacirc;
using horacirc::testing::Gen;
using horacirc::testing::row_of;

TEST_CASE("from_params takes W_1..W_n") {
    CHECK(from_params(HoradamParams::fibonacci(), 3).first_row() == row_of({"1", "1", "2"}));
    CHECK(from_params(HoradamParams::lucas(), 3).first_row() == row_of({"1", "3", "4"}));
    CHECK(from_params(HoradamParams::fibonacci(), 1).first_row() == row_of({"1"}));
    CHECK_THROWS_AS(from_params(HoradamParams::fibonacci(), 0), InvalidArgument);
}

TEST_CASE("materialize follows the cyclic right shift") {
    const DenseMatrix m = materialize(Circulant(row_of({"1", "1", "2"})));
    CHECK(m == DenseMatrix::from_rows({row_of({"1", "1", "2"}), row_of({"2", "1", "1"}), row_of({"1", "2", "1"})}));
    CHECK(materialize(Circulant(row_of({"7/3"}))) == DenseMatrix::from_rows({row_of({"7/3"})}));
    CHECK(materialize(Circulant(row_of({"0", "1"}))) == DenseMatrix::from_rows({row_of({"0", "1"}), row_of({"1", "0"})}));

    // second row is (c_{n-1}, c_0, ..., c_{n-2}); last row is (c_1, ..., c_0)
    const Circulant c(row_of({"1", "2", "3", "4", "5"}));
    const DenseMatrix d = materialize(c);
    CHECK(d.row(1) == row_of({"5", "1", "2", "3", "4"}));
    CHECK(d.row(4) == row_of({"2", "3", "4", "5", "1"}));
}

TEST_CASE("conv_mul examples") {
    const Circulant fib3(row_of({"1", "1", "2"}));
    CHECK(conv_mul(fib3, Circulant(row_of({"-1/4", "3/4", "-1/4"}))) == Circulant(row_of({"1", "0", "0"})));
    CHECK(conv_mul(fib3, Circulant(row_of({"1", "0", "0"}))) == fib3);
    const Circulant shift(row_of({"0", "1", "0"}));
    CHECK(conv_mul(shift, shift) == Circulant(row_of({"0", "0", "1"})));
    CHECK_THROWS_AS(conv_mul(fib3, Circulant(row_of({"1", "2"}))), DimensionMismatch);
}

TEST_CASE("circulant algebra properties") {
    Gen g(7);
    for (std::size_t n = 1; n <= 8; ++n) {
        for (int it = 0; it < 6; ++it) {
            const Circulant x = g.circulant(n);
            const Circulant y = g.circulant(n);
            const Circulant xy = conv_mul(x, y);
            CHECK(xy == conv_mul(y, x));
            CHECK(materialize(xy) == materialize(x) * materialize(y));
            CHECK(xy.row_sum() == x.row_sum() * y.row_sum());
            // every row of a circulant has the same sum
            const DenseMatrix m = materialize(x);
            for (std::size_t i = 0; i < n; ++i) {
                Rational s;
                for (const auto& e : m.row(i)) s += e;
                CHECK(s == x.row_sum());
            }
            CHECK(as_circulant(m) == x);
        }
    }
}

TEST_CASE("as_circulant rejects non-circulant matrices") {
    DenseMatrix m = materialize(Circulant(row_of({"1", "2", "3"})));
    m(2, 0) = Rational(9);
    CHECK_FALSE(as_circulant(m).has_value());
    CHECK_FALSE(as_circulant(DenseMatrix(2, 3)).has_value());
}

TEST_CASE("circulant JSON form round-trips") {
    Gen g(99);
    for (int it = 0; it < 20; ++it) {
        const Circulant c = g.circulant(static_cast<std::size_t>(g.integer(1, 7)));
        const Json j = to_json(c);
        CHECK(j["n"] == c.n());
        CHECK(circulant_from_json(Json::parse(j.dump())) == c);
    }
    CHECK(to_json(Circulant(row_of({"1", "-1/4"}))).dump() == R"({"n":2,"first_row":["1","-1/4"]})");
    CHECK_THROWS_AS(circulant_from_json(Json::parse(R"({"n":3,"first_row":["1"]})")), ParseError);
}
