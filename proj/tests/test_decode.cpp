#include <doctest.h>

#include "cnc/decode.hpp"
#include "oracles.hpp"

using namespace cnc;

namespace {

const FieldCtx& f256() { return FieldCtx::parse("gf2^8:0x11D"); }

// The fig3 fixture's decoding relation at rates (1,1), as printed by init.
DifferenceEquation reduced_equation() {
    return {"d", Poly::parse(f256(), "209*z^2 + z^5"),
            PolyMatrix::parse(f256(),
                              "[[113*z + 57*z^2, 84 + 231*z^3], "
                              "[24 + 185*z + 157*z^3, 228*z^2]]"),
            8, 1};
}

// Decode operator golden: (42 adj Gt) P, the full recursion coefficient set.
const char* kGoldenDecodeOp =
    "[[221*z^4 + 119*z^7, 65*z^2 + 119*z^5 + 9*z^8], "
    "[30*z^2 + 208*z^3 + 42*z^5 + 112*z^6 + 241*z^8, "
    "42*z^3 + 112*z^4 + 203*z^6 + 212*z^7]]";

// Simulates the fig3 network at rates (1,1): u feeds (u1, 0, u2).
std::pair<SymbolSequence, SymbolSequence> simulate_reduced(uint64_t seed, int horizon,
                                                           const std::vector<uint16_t>& x0 = {}) {
    const auto spec = load_network(oracle::fixture("fig3.json"));
    const auto ss = build_state_space(spec);
    const auto& f = spec.ctx();
    Simulator sim(ss);
    if (!x0.empty()) sim.set_state(x0);
    oracle::Rng rng(seed);
    SymbolSequence u(f, 2, 0), y(f, 2, 0);
    for (int n = 0; n < horizon; ++n) {
        const uint16_t u1 = rng.value(f), u2 = rng.value(f);
        u.append_values({u1, u2});
        y.append(sim.step_values({u1, 0, u2})[0]);
    }
    return {std::move(u), std::move(y)};
}

}  // namespace

TEST_CASE("identity equation gives a passthrough plan") {
    const auto& f = f256();
    DifferenceEquation eq{"d", Poly(f, {1}), PolyMatrix::identity(f, 2), 2, 1};
    const auto plan = build_plan(eq);
    CHECK(plan.adj_g == PolyMatrix::identity(f, 2));
    CHECK(plan.f == Poly(f, {1}));
    CHECK(plan.delay == 0);
    CHECK(plan.retained_rows == std::vector<int>{0, 1});

    SymbolSequence y(f, 2, 0);
    for (int n = 0; n < 5; ++n) y.append_values({static_cast<uint16_t>(n), 7});
    const auto u = decode_stream(plan, y, 4);
    for (long n = 0; n <= 4; ++n) CHECK(u.at(n) == y.at(n));
}

TEST_CASE("plan derived from the worked reduced matrix") {
    const auto plan = build_plan(reduced_equation());
    CHECK(plan.f == Poly::parse(f256(), "105 + 223*z + 152*z^3 + 149*z^4 + z^6"));
    CHECK(plan.delay == 6);
    CHECK(plan.retained_rows == std::vector<int>{0, 1});
    // the full coefficient set of the solved recursion
    CHECK((plan.adj_g * plan.eq.P).to_string() == kGoldenDecodeOp);
    // adj G = f I after the monic scaling
    const auto gt = reduced_equation().G;
    CHECK(plan.adj_g * gt == PolyMatrix::identity(f256(), 2) * plan.f);
}

TEST_CASE("rank-deficient transfer matrices are refused") {
    DifferenceEquation eq{"d", Poly::parse(f256(), "209*z^2 + z^5"),
                          PolyMatrix::parse(f256(),
                                            "[[113*z + 57*z^2, 63*z + 73*z^2, 84 + 231*z^3], "
                                            "[24 + 185*z + 157*z^3, 17 + 105*z + 13*z^3, "
                                            "228*z^2]]"),
                          8, 1};
    CHECK_THROWS_AS(build_plan(eq), UndecodableError);
}

TEST_CASE("round trip on the worked network at rates (1,1)") {
    const auto plan = build_plan(reduced_equation());
    const int horizon = 57;  // 50 decoded symbols with delay 6
    const auto [u, y] = simulate_reduced(4242, horizon);
    const auto dec = decode_stream(plan, y, horizon - 1);
    CHECK(dec.defined_until() == horizon - 1 - 6);
    CHECK(dec.defined_until() >= 49);
    for (long n = 0; n <= dec.defined_until(); ++n) CHECK(dec.at(n) == u.at(n));
}

TEST_CASE("all-zero output decodes to all-zero input") {
    const auto plan = build_plan(reduced_equation());
    SymbolSequence y(f256(), 2, 0);
    for (int n = 0; n < 40; ++n) y.append_values({0, 0});
    const auto dec = decode_stream(plan, y, 39);
    for (long n = 0; n <= dec.defined_until(); ++n)
        for (const auto& v : dec.at(n)) CHECK(v.is_zero());
}

TEST_CASE("decoding is shift invariant") {
    const auto plan = build_plan(reduced_equation());
    const auto [u, y] = simulate_reduced(99, 50);
    SymbolSequence delayed(f256(), 2, 1);  // same values, one step later
    for (long n = 0; n <= y.defined_until(); ++n) delayed.append(y.at(n));

    const auto a = decode_stream(plan, y, 49);
    const auto b = decode_stream(plan, delayed, 50);
    CHECK(b.at(0) == std::vector<FieldElement>{f256().zero(), f256().zero()});
    for (long n = 0; n <= a.defined_until(); ++n) CHECK(b.at(n + 1) == a.at(n));
}

TEST_CASE("reset-free plans splice the known prefix") {
    // Full run from the worked nonzero initial state: pilots for the first
    // 68 steps, then live traffic. The relation holds from n = 1 on, and
    // u[0..N] are pilot-quiet zeros, so the default prefix applies.
    const auto spec = load_network(oracle::fixture("fig3.json"));
    const auto ss = build_state_space(spec);
    const auto& f = spec.ctx();
    const std::vector<uint16_t> x0{50, 64, 157, 121, 90, 212, 149, 140};

    const auto eq_full = initialize_without_reset(spec, x0).equations[0];
    // live traffic happens at rates (1,1); drop the zero middle column
    DifferenceEquation eq{eq_full.sink, eq_full.P, eq_full.G.select_cols({0, 2}), eq_full.N, 2};
    const auto plan = build_plan(eq);

    Simulator sim(ss);
    sim.set_state(x0);
    oracle::Rng rng(7);
    SymbolSequence u(f, 2, 0), y(f, 2, 0);
    const long pilots_end = 68, horizon = pilots_end + 120;
    for (long n = 0; n < horizon; ++n) {
        uint16_t u1 = 0, u2 = 0;
        if (n < pilots_end) {
            // the reset-free pilot schedule at rates (2,1), middle input unused
            if (n == 17) u1 = 1;
            if (n == 51) u2 = 1;
        } else {
            u1 = rng.value(f);
            u2 = rng.value(f);
        }
        u.append_values({u1, u2});
        y.append(sim.step_values({u1, 0, u2})[0]);
    }

    const auto dec = decode_stream(plan, y, horizon - 1);
    CHECK(dec.defined_until() == horizon - 1 - plan.delay);
    for (long n = 0; n <= dec.defined_until(); ++n) CHECK(dec.at(n) == u.at(n));
}

TEST_CASE("round trip where a sink hears its own inputs") {
    // Both shuttle endpoints are source and sink at once, so y includes the
    // node's own generated symbol and G carries a feedthrough column.
    const auto spec = load_network(oracle::fixture("shuttle.json"));
    const auto ss = build_state_space(spec);
    const auto& f = spec.ctx();
    const auto eqs = initialize_with_reset(spec).equations;
    REQUIRE(eqs.size() == 2);

    for (size_t si = 0; si < eqs.size(); ++si) {
        const auto plan = build_plan(eqs[si]);
        Simulator sim(ss);
        oracle::Rng rng(1000 + si);
        SymbolSequence u(f, 2, 0), y(f, 2, 0);
        const int horizon = 80;
        for (int n = 0; n < horizon; ++n) {
            const std::vector<uint16_t> un{rng.value(f), rng.value(f)};
            u.append_values(un);
            y.append(sim.step_values(un)[si]);
        }
        const int slack = std::max(
            0, std::max(plan.adj_g.max_degree(), 0) + *plan.eq.P.degree() - 2 * plan.delay);
        const auto dec = decode_stream(plan, y, horizon - 1 - slack);
        CHECK(dec.defined_until() >= 40);
        for (long n = 0; n <= dec.defined_until(); ++n) CHECK(dec.at(n) == u.at(n));
    }
}

TEST_CASE("round trips on random networks") {
    int plans_built = 0, symbols_checked = 0;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const auto spec = oracle::random_network(seed);
        const auto ss = build_state_space(spec);
        const auto& f = spec.ctx();
        const int m = ss.input_dim();
        const auto result = initialize_with_reset(spec);

        for (const auto& eq : result.equations) {
            if (rank_over_ring(eq.G) < eq.G.cols()) {
                CHECK_THROWS_AS(build_plan(eq), UndecodableError);
                continue;
            }
            const auto plan = build_plan(eq);
            ++plans_built;

            const int horizon = 100;
            Simulator sim(ss);
            oracle::Rng rng(seed * 1000);
            SymbolSequence u(f, m, 0), y(f, eq.G.rows(), 0);
            size_t sink_index = 0;
            for (size_t i = 0; i < ss.sinks.size(); ++i)
                if (ss.sinks[i].sink == eq.sink) sink_index = i;
            for (int n = 0; n < horizon; ++n) {
                std::vector<uint16_t> un(static_cast<size_t>(m));
                for (auto& v : un) v = rng.value(f);
                u.append_values(un);
                y.append(sim.step_values(un)[sink_index]);
            }

            // decoding up to U reads y up to U - 2*delay + deg(adj) + deg(P)
            const int deg_adj = std::max(plan.adj_g.max_degree(), 0);
            const int deg_p = *plan.eq.P.degree();
            const int slack = std::max(0, deg_adj + deg_p - 2 * plan.delay);
            const long upto = horizon - 1 - slack;
            const auto dec = decode_stream(plan, y, upto);
            CHECK(dec.defined_until() == upto - plan.delay);
            for (long n = 0; n <= dec.defined_until(); ++n) {
                CHECK(dec.at(n) == u.at(n));
                ++symbols_checked;
            }
        }
    }
    CHECK(plans_built >= 5);
    CHECK(symbols_checked > 300);
}

TEST_CASE("incremental decoding matches the batch decoder") {
    const auto plan = build_plan(reduced_equation());
    const int horizon = 60;
    const auto [u, y] = simulate_reduced(777, horizon);

    StreamDecoder stream(plan);
    long emitted = 0;
    bool primed = false;
    for (long n = 0; n <= y.defined_until(); ++n) {
        const auto out = stream.push(y.at(n));
        if (out) {
            // at most one vector per push, in order, with the right value
            CHECK(*out == u.at(emitted));
            ++emitted;
            primed = true;
        } else {
            CHECK(!primed);  // once primed, every push yields a vector
        }
    }
    CHECK(emitted >= horizon - 1 - 2 * plan.delay);

    // the batch result is a prefix of the streamed one
    const auto batch = decode_stream(plan, y, horizon - 1);
    CHECK(emitted >= batch.defined_until() + 1);
    for (long n = 0; n <= batch.defined_until(); ++n) CHECK(batch.at(n) == u.at(n));

    // drain flushes nothing extra here (every feasible step already fired)
    CHECK(stream.drain().empty());
    CHECK(stream.next_output_time() == emitted);
}

TEST_CASE("incremental decoding handles the reset-free prefix splice") {
    const auto spec = load_network(oracle::fixture("fig3.json"));
    const std::vector<uint16_t> x0{50, 64, 157, 121, 90, 212, 149, 140};
    const auto eq_full = initialize_without_reset(spec, x0).equations[0];
    const DifferenceEquation eq{eq_full.sink, eq_full.P, eq_full.G.select_cols({0, 2}),
                                eq_full.N, 2};
    const auto plan = build_plan(eq);

    const auto ss = build_state_space(spec);
    Simulator sim(ss);
    sim.set_state(x0);
    oracle::Rng rng(31);
    StreamDecoder stream(plan);
    SymbolSequence u(spec.ctx(), 2, 0);
    long emitted = 0;
    for (long n = 0; n < 150; ++n) {
        uint16_t u1 = 0, u2 = 0;
        if (n == 17) u1 = 1;        // the pilot schedule occupies [0, 68)
        if (n == 51) u2 = 1;
        if (n >= 68) {
            u1 = rng.value(spec.ctx());
            u2 = rng.value(spec.ctx());
        }
        u.append_values({u1, u2});
        if (const auto out = stream.push(sim.step_values({u1, 0, u2})[0])) {
            CHECK(*out == u.at(emitted));
            ++emitted;
        }
    }
    CHECK(emitted >= 150 - 2 * plan.delay);
}

TEST_CASE("short output raises a needs-more-symbols error") {
    const auto plan = build_plan(reduced_equation());
    SymbolSequence y(f256(), 2, 0);
    for (int n = 0; n < 10; ++n) y.append_values({1, 2});
    CHECK_THROWS_AS(decode_stream(plan, y, 30), NeedsMoreSymbolsError);
}

TEST_CASE("plan files round trip") {
    const auto plan = build_plan(reduced_equation());
    const std::string text = plan_to_json(plan);
    const auto back = parse_plan(text);
    CHECK(back.f == plan.f);
    CHECK(back.delay == plan.delay);
    CHECK(back.adj_g == plan.adj_g);
    CHECK(back.eq.G == plan.eq.G);
    CHECK(back.retained_rows == plan.retained_rows);
    CHECK_THROWS_AS(parse_plan("{}"), ParseError);
    CHECK_THROWS_AS(parse_plan("not json"), ParseError);
}

TEST_CASE("prefix dimension guards") {
    const auto& f = f256();
    const auto eq = reduced_equation();
    CHECK_THROWS_AS(build_plan(eq, SymbolSequence(f, 3, 0)), DimensionError);
    DifferenceEquation tag2 = eq;
    tag2.algorithm = 2;
    SymbolSequence too_short(f, 2, 0);
    too_short.append_values({0, 0});
    CHECK_THROWS_AS(build_plan(tag2, too_short), DimensionError);
}
