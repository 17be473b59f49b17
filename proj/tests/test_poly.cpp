#include <doctest.h>

#include "cnc/init.hpp"
#include "cnc/network.hpp"
#include "cnc/poly.hpp"
#include "oracles.hpp"

using namespace cnc;

namespace {
const FieldCtx& f256() { return FieldCtx::parse("gf2^8:0x11D"); }
}  // namespace

TEST_CASE("ring operations") {
    const auto& f = f256();
    CHECK(Poly::monomial(f, 1, 2) * Poly::monomial(f, 1, 3) == Poly::monomial(f, 1, 5));
    CHECK(Poly::monomial(f, 1, 2) * f.make(209) + Poly::monomial(f, 1, 5) ==
          Poly::parse(f, "209*z^2 + z^5"));

    oracle::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const Poly p = rng.poly(f, 6);
        CHECK((p + p).is_zero());  // characteristic 2
        const Poly q = rng.poly(f, 6);
        if (!p.is_zero() && !q.is_zero())
            CHECK(*(p * q).degree() == *p.degree() + *q.degree());
    }
}

TEST_CASE("degree of zero is a sentinel") {
    const auto& f = f256();
    CHECK(!Poly(f).degree().has_value());
    CHECK(Poly(f, {0, 0, 0}).is_zero());
    CHECK(*Poly(f, {5}).degree() == 0);
    CHECK_THROWS_AS(Poly(f).leading(), Error);
}

TEST_CASE("division with remainder") {
    const auto& f = f256();
    oracle::Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        const Poly a = rng.poly(f, 8);
        Poly b = rng.poly(f, 4);
        if (b.is_zero()) b = Poly(f, {1});
        const auto [q, r] = Poly::divmod(a, b);
        CHECK(q * b + r == a);
        if (!r.is_zero()) CHECK(*r.degree() < *b.degree());
    }
    CHECK((Poly::parse(f, "z^3") * Poly::parse(f, "7 + z")).exact_div(Poly::parse(f, "7 + z")) ==
          Poly::parse(f, "z^3"));
    CHECK_THROWS_AS(Poly::parse(f, "1 + z^3").exact_div(Poly::parse(f, "z")), Error);
}

TEST_CASE("textual form") {
    const auto& f = f256();
    CHECK(Poly(f).to_string() == "0");
    CHECK(Poly(f, {209}).to_string() == "209");
    CHECK(Poly::parse(f, "209z^2+z^5").to_string() == "209*z^2 + z^5");
    CHECK(Poly::parse(f, "z") == Poly::monomial(f, 1, 1));
    CHECK(Poly::parse(f, "0") == Poly(f));
    CHECK(Poly::parse(f, "3 + 3").is_zero());  // xor-accumulated duplicates
    CHECK_THROWS_AS(Poly::parse(f, "300"), ParseError);
    CHECK_THROWS_AS(Poly::parse(f, "2*w"), ParseError);
    CHECK_THROWS_AS(Poly::parse(f, ""), ParseError);
    oracle::Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        const Poly p = rng.poly(f, 9);
        CHECK(Poly::parse(f, p.to_string()) == p);
    }
}

TEST_CASE("sequences: implicit zeros and exhaustion") {
    const auto& f = f256();
    SymbolSequence s(f, 2, 5);
    s.append_values({1, 2});
    s.append_values({3, 4});
    CHECK(s.at(0) == std::vector<FieldElement>{f.zero(), f.zero()});
    CHECK(s.at(6)[1].value() == 4);
    CHECK(s.defined_until() == 6);
    CHECK_THROWS_AS(s.at(7), NeedsMoreSymbolsError);
    CHECK(s.at_or_zero(7)[0].is_zero());
    CHECK_THROWS_AS(s.append_values({1}), DimensionError);
}

TEST_CASE("shift operator basics") {
    const auto& f = f256();
    SymbolSequence c(f, 1, 0);
    for (uint16_t v : {9, 8, 7, 6, 5}) c.append_values({v});

    const Poly z = Poly::monomial(f, 1, 1);
    for (long n = 0; n < 4; ++n) CHECK(apply_shift_operator(z, c, n) == c.at(n + 1));
    const Poly one(f, {1});
    for (long n = 0; n < 5; ++n) CHECK(apply_shift_operator(one, c, n) == c.at(n));
}

TEST_CASE("shift operator annihilates the measured impulse response") {
    // The recovered P(z) applied (per input column) to the impulse-response
    // sequence gives zero at every offset in [1, N].
    const auto spec = load_network(oracle::fixture("fig3.json"));
    const auto& f = spec.ctx();
    const auto markov = collect_markov(spec);
    const Poly p = Poly::parse(f, "209*z^2 + z^5");
    for (int col = 0; col < 3; ++col) {
        SymbolSequence c(f, 2, 0);
        for (const auto& mat : markov[0].M)
            c.append({mat(0, col), mat(1, col)});
        for (long tau = 1; tau <= 8; ++tau) {
            const auto v = apply_shift_operator(p, c, tau);
            CHECK(v[0].is_zero());
            CHECK(v[1].is_zero());
        }
    }
}

TEST_CASE("operator linearity and composition") {
    const auto& f = f256();
    oracle::Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const Poly p = rng.poly(f, 4), q = rng.poly(f, 4);
        SymbolSequence c(f, 3, 0);
        for (int n = 0; n < 20; ++n)
            c.append({rng.element(f), rng.element(f), rng.element(f)});

        for (long n = 0; n < 5; ++n) {
            const auto lhs = apply_shift_operator(p + q, c, n);
            const auto a = apply_shift_operator(p, c, n);
            const auto b = apply_shift_operator(q, c, n);
            for (size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == a[i] + b[i]);
        }

        // (PQ)c = P(Qc): precompute Qc on a window wide enough for P
        SymbolSequence qc(f, 3, 0);
        for (long n = 0; n <= 10; ++n) qc.append(apply_shift_operator(q, c, n));
        for (long n = 0; n < 5; ++n) {
            const auto lhs = apply_shift_operator(p * q, c, n);
            const auto rhs = apply_shift_operator(p, qc, n);
            for (size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == rhs[i]);
        }
    }
}
