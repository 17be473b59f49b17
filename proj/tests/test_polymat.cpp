#include <doctest.h>

#include "cnc/polymat.hpp"
#include "oracles.hpp"

using namespace cnc;

namespace {

const FieldCtx& f256() { return FieldCtx::parse("gf2^8:0x11D"); }

// Reduced 2x2 transfer matrix of the fig3 fixture at rates (1,1).
PolyMatrix g_tilde() {
    return PolyMatrix::parse(
        f256(), "[[113*z + 57*z^2, 84 + 231*z^3], [24 + 185*z + 157*z^3, 228*z^2]]");
}

// Full 2x3 transfer matrix of the fig3 fixture.
PolyMatrix g_full() {
    return PolyMatrix::parse(f256(),
                             "[[113*z + 57*z^2, 63*z + 73*z^2, 84 + 231*z^3], "
                             "[24 + 185*z + 157*z^3, 17 + 105*z + 13*z^3, 228*z^2]]");
}

}  // namespace

TEST_CASE("determinant") {
    const auto& f = f256();
    CHECK(det(PolyMatrix::identity(f, 3)) == Poly(f, {1}));
    CHECK(det(g_tilde()) * f.make(42) == Poly::parse(f, "105 + 223*z + 152*z^3 + 149*z^4 + z^6"));
    CHECK_THROWS_AS(det(PolyMatrix(f, 2, 3)), DimensionError);

    oracle::Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        const PolyMatrix m = rng.poly_matrix(f, 3, 3, 2);
        CHECK(det(m) == oracle::det_laplace(m));
    }
}

TEST_CASE("determinant under fraction-free elimination matches cofactors up to 4x4") {
    const auto& f = f256();
    oracle::Rng rng(53);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 1 + static_cast<int>(rng.g() % 4);
        PolyMatrix m = rng.poly_matrix(f, n, n, 3);
        if (trial % 4 == 0 && n > 1)  // exercise the pivoting path
            m(0, 0) = Poly(f);
        CHECK(det(m) == oracle::det_laplace(m));
    }
}

TEST_CASE("adjugate identity") {
    const auto& f = f256();
    CHECK(adjugate(PolyMatrix::identity(f, 3)) == PolyMatrix::identity(f, 3));

    // 1x1 convention
    PolyMatrix one_by_one(f, 1, 1);
    one_by_one(0, 0) = Poly::parse(f, "7 + z^2");
    CHECK(adjugate(one_by_one) == PolyMatrix::identity(f, 1));

    const PolyMatrix gt = g_tilde();
    const Poly d = det(gt);
    PolyMatrix expected = PolyMatrix::identity(f, 2) * d;
    CHECK(adjugate(gt) * gt == expected);
    // scaled by 42 the z^6 coefficient of the product diagonal becomes 1
    const auto scaled = (adjugate(gt) * gt) * f.make(42);
    CHECK(scaled(0, 0).coeff(6).is_one());
    CHECK(scaled(1, 1).coeff(6).is_one());
    CHECK(scaled(0, 1).is_zero());

    oracle::Rng rng(59);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + static_cast<int>(rng.g() % 4);
        const PolyMatrix m = rng.poly_matrix(f, n, n, 3);
        const PolyMatrix di = PolyMatrix::identity(f, n) * det(m);
        CHECK(adjugate(m) * m == di);
        CHECK(m * adjugate(m) == di);
    }
}

TEST_CASE("rank over the ring") {
    const auto& f = f256();
    CHECK(rank_over_ring(g_full()) == 2);
    CHECK(rank_over_ring(PolyMatrix(f, 3, 4)) == 0);

    PolyMatrix prop(f, 2, 1);
    prop(0, 0) = Poly::parse(f, "3 + 5*z");
    prop(1, 0) = prop(0, 0) * Poly::monomial(f, 1, 1);
    CHECK(rank_over_ring(prop) == 1);
    PolyMatrix stacked(f, 2, 2);
    stacked(0, 0) = Poly::parse(f, "3 + 5*z");
    stacked(0, 1) = Poly::parse(f, "z^2");
    stacked(1, 0) = prop(0, 0) * Poly::monomial(f, 1, 1);
    stacked(1, 1) = Poly::parse(f, "z^3");
    CHECK(rank_over_ring(stacked) == oracle::rank_by_evaluation(stacked));
}

TEST_CASE("rank agrees with the evaluation oracle on random instances") {
    const auto& f = f256();
    oracle::Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const int r = 1 + static_cast<int>(rng.g() % 4);
        const int c = 1 + static_cast<int>(rng.g() % 4);
        PolyMatrix m = rng.poly_matrix(f, r, c, 3);
        if (trial % 3 == 0 && r > 1)
            for (int j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Poly::monomial(f, 1, 1);
        CHECK(rank_over_ring(m) == oracle::rank_by_evaluation(m));
    }
}

TEST_CASE("column independence") {
    const auto& f = f256();
    const PolyMatrix gt = g_tilde();
    CHECK(columns_independent({gt.column(0), gt.column(1)}));

    const PolyMatrix gs1 = g_full().select_cols({0, 1});
    CHECK(columns_independent({gs1.column(0), gs1.column(1)}));

    auto col = gt.column(0);
    std::vector<Poly> shifted;
    for (const auto& p : col) shifted.push_back(p * Poly::monomial(f, 1, 1));
    CHECK(!columns_independent({col, shifted}));
    CHECK(columns_independent({}));
    CHECK_THROWS_AS(columns_independent({{Poly(f)}, {Poly(f), Poly(f)}}), DimensionError);
}

TEST_CASE("full-rank row selection") {
    const auto& f = f256();
    const PolyMatrix gt = g_tilde();
    const auto sel = select_full_rank_rows(gt);
    CHECK(sel.rows == std::vector<int>{0, 1});
    CHECK(sel.matrix == gt);

    PolyMatrix tall(f, 3, 2);
    tall(0, 0) = Poly::parse(f, "1 + z");
    tall(0, 1) = Poly::parse(f, "z^2");
    tall(1, 0) = tall(0, 0) * Poly::monomial(f, 1, 1);  // row1 = z * row0
    tall(1, 1) = tall(0, 1) * Poly::monomial(f, 1, 1);
    tall(2, 0) = Poly::parse(f, "5");
    tall(2, 1) = Poly::parse(f, "9 + z");
    const auto s2 = select_full_rank_rows(tall);
    CHECK(s2.rows == std::vector<int>{0, 2});
    CHECK(!det(s2.matrix).is_zero());

    CHECK_THROWS_AS(select_full_rank_rows(g_full()), UndecodableError);  // rank 2 < 3 columns
}

TEST_CASE("row selection matches the exhaustive subset oracle") {
    const auto& f = f256();
    oracle::Rng rng(67);
    for (int trial = 0; trial < 15; ++trial) {
        // random 4x2 of rank 2: two random rows plus two random combinations
        PolyMatrix m(f, 4, 2);
        for (int j = 0; j < 2; ++j) {
            m(0, j) = rng.poly(f, 2);
            m(1, j) = rng.poly(f, 2);
        }
        for (int i = 2; i < 4; ++i) {
            const Poly a = rng.poly(f, 1), b = rng.poly(f, 1);
            for (int j = 0; j < 2; ++j) m(i, j) = a * m(0, j) + b * m(1, j);
        }
        if (rank_over_ring(m) != 2) continue;
        const auto sel = select_full_rank_rows(m);
        CHECK(!det(sel.matrix).is_zero());
        // lexicographically first pair with nonzero determinant
        std::vector<int> first;
        for (int i = 0; i < 4 && first.empty(); ++i)
            for (int j = i + 1; j < 4 && first.empty(); ++j)
                if (!det(m.select_rows({i, j})).is_zero()) first = {i, j};
        CHECK(sel.rows == first);
    }
}

TEST_CASE("textual form round trip") {
    const auto& f = f256();
    const PolyMatrix gt = g_tilde();
    CHECK(gt.to_string() == "[[113*z + 57*z^2, 84 + 231*z^3], [24 + 185*z + 157*z^3, 228*z^2]]");
    CHECK(PolyMatrix::parse(f, gt.to_string()) == gt);
    CHECK(PolyMatrix::parse(f, "[]").rows() == 0);
    CHECK_THROWS_AS(PolyMatrix::parse(f, "[[1, 2], [3]]"), ParseError);
    CHECK_THROWS_AS(PolyMatrix::parse(f, "[[1, 2]] tail"), ParseError);

    oracle::Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const PolyMatrix m = rng.poly_matrix(f, 2, 3, 4);
        CHECK(PolyMatrix::parse(f, m.to_string()) == m);
    }
}

TEST_CASE("size guards") {
    const auto& f = f256();
    PolyMatrix big(f, 33, 33);
    CHECK_THROWS_AS(det(big), LimitError);
    PolyMatrix deep(f, 2, 2);
    deep(0, 0) = Poly::monomial(f, 1, 65);
    CHECK_THROWS_AS(rank_over_ring(deep), LimitError);
}
