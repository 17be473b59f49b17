#include "cnc/init.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace cnc {

namespace {

std::vector<FieldElement> basis_vector(const FieldCtx& ctx, int dim, int i) {
    std::vector<FieldElement> e(static_cast<size_t>(dim), ctx.zero());
    e[static_cast<size_t>(i)] = ctx.one();
    return e;
}

/// Lowest-degree kernel vector, monic-normalized.
Poly solve_canonical(const FieldMatrix& sys) {
    const FieldCtx& ctx = sys.ctx();
    auto basis = nullspace(sys);
    if (basis.empty())
        throw InitializationError(
            "pilot system has only the trivial solution; the declared N is likely below the "
            "true edge count, or the traces are corrupted");
    size_t best = 0;
    int best_deg = -1;
    for (size_t b = 0; b < basis.size(); ++b) {
        int deg = -1;
        for (int k = static_cast<int>(basis[b].size()) - 1; k >= 0; --k)
            if (!basis[b][static_cast<size_t>(k)].is_zero()) {
                deg = k;
                break;
            }
        if (deg < 0) continue;
        if (best_deg < 0 || deg < best_deg) {
            best = b;
            best_deg = deg;
        }
    }
    if (best_deg < 0) throw InitializationError("kernel basis contains only zero vectors");
    auto coeffs = basis[best];
    const FieldElement lead_inv = coeffs[static_cast<size_t>(best_deg)].inv();
    for (auto& c : coeffs) c *= lead_inv;
    return Poly(ctx, std::move(coeffs));
}

std::vector<FieldElement> padded_coeffs(const Poly& alpha, int N) {
    if (alpha.is_zero()) throw InitializationError("forced polynomial must be nonzero");
    if (alpha.degree() > N)
        throw InitializationError("forced polynomial degree exceeds N = " + std::to_string(N));
    std::vector<FieldElement> a;
    a.reserve(static_cast<size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) a.push_back(alpha.coeff(k));
    return a;
}

bool system_accepts(const FieldMatrix& sys, const Poly& alpha, int N) {
    const auto a = padded_coeffs(alpha, N);
    const auto residual = sys.apply(a);
    for (const auto& r : residual)
        if (!r.is_zero()) return false;
    return true;
}

Poly choose_alpha(const FieldMatrix& sys, int N, const std::optional<Poly>& forced) {
    if (!forced) return solve_canonical(sys);
    if (!system_accepts(sys, *forced, N))
        throw InitializationError("forced polynomial '" + forced->to_string() +
                                  "' does not solve the pilot system");
    return *forced;
}

}  // namespace

std::vector<MarkovSequence> collect_markov(const NetworkSpec& spec) {
    const FieldCtx& ctx = spec.ctx();
    const StateSpace ss = build_state_space(spec);
    const int m = ss.input_dim();
    const int N = spec.N;
    const int horizon = 2 * N + 1;

    std::vector<MarkovSequence> out;
    for (const auto& s : ss.sinks) {
        MarkovSequence ms{s.sink, {}};
        ms.M.assign(static_cast<size_t>(horizon),
                    FieldMatrix(ctx, s.C.rows(), m));
        out.push_back(std::move(ms));
    }

    Simulator sim(ss);
    const std::vector<FieldElement> zero_u(static_cast<size_t>(m), ctx.zero());
    for (int i = 0; i < m; ++i) {
        sim.reset();
        for (int n = 0; n < horizon; ++n) {
            const auto ys = sim.step(n == 0 ? basis_vector(ctx, m, i) : zero_u);
            for (size_t si = 0; si < ys.size(); ++si)
                for (size_t r = 0; r < ys[si].size(); ++r)
                    out[si].M[static_cast<size_t>(n)](static_cast<int>(r), i) = ys[si][r];
        }
    }
    return out;
}

FieldMatrix assemble_impulse_system(const MarkovSequence& markov, int N) {
    if (static_cast<int>(markov.M.size()) < 2 * N + 1)
        throw DimensionError("impulse response too short: need M[0..2N]");
    const FieldCtx& ctx = markov.M[0].ctx();
    const int l = markov.M[0].rows();
    const int m = markov.M[0].cols();
    FieldMatrix sys(ctx, N * l * m, N + 1);
    int row = 0;
    for (int tau = 1; tau <= N; ++tau)
        for (int r = 0; r < l; ++r)
            for (int c = 0; c < m; ++c) {
                for (int k = 0; k <= N; ++k)
                    sys(row, k) = markov.M[static_cast<size_t>(k + tau)](r, c);
                ++row;
            }
    return sys;
}

bool impulse_system_accepts(const MarkovSequence& markov, int N, const Poly& alpha) {
    return system_accepts(assemble_impulse_system(markov, N), alpha, N);
}

DifferenceEquation equation_from_markov(const MarkovSequence& markov, int N,
                                        const std::optional<Poly>& forced) {
    const FieldCtx& ctx = markov.M[0].ctx();
    const int l = markov.M[0].rows();
    const int m = markov.M[0].cols();
    const Poly P = choose_alpha(assemble_impulse_system(markov, N), N, forced);

    // G(z) = sum_{k=1..N} (sum_{j=k..N} a_j M[j-k+1]) z^{k-1} + M[0] P(z)
    std::vector<FieldMatrix> coeffs;
    coeffs.reserve(static_cast<size_t>(N));
    for (int k = 1; k <= N; ++k) {
        FieldMatrix ck(ctx, l, m);
        for (int j = k; j <= N; ++j) {
            const FieldElement aj = P.coeff(j);
            if (aj.is_zero()) continue;
            ck += markov.M[static_cast<size_t>(j - k + 1)] * aj;
        }
        coeffs.push_back(std::move(ck));
    }
    PolyMatrix G = coeffs.empty() ? PolyMatrix(ctx, l, m) : PolyMatrix::from_coefficients(coeffs);
    PolyMatrix feedthrough(ctx, l, m);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < m; ++j)
            feedthrough(i, j) = Poly(ctx, std::vector<FieldElement>{markov.M[0](i, j)});
    G += feedthrough * P;
    return {markov.sink, P, std::move(G), N, 1};
}

InitResult initialize_with_reset(const NetworkSpec& spec, const std::optional<Poly>& forced) {
    InitResult out;
    out.markov = collect_markov(spec);
    for (const auto& ms : out.markov)
        out.equations.push_back(equation_from_markov(ms, spec.N, forced));
    return out;
}

std::vector<SymbolSequence> record_pilot_response(const NetworkSpec& spec,
                                                  const std::vector<uint16_t>& x0) {
    const FieldCtx& ctx = spec.ctx();
    const StateSpace ss = build_state_space(spec);
    const int m = ss.input_dim();
    const int N = spec.N;
    const long horizon = static_cast<long>(m + 1) * (2 * N + 1);

    Simulator sim(ss);
    sim.set_state(x0);
    std::vector<SymbolSequence> out;
    for (const auto& s : ss.sinks) out.emplace_back(ctx, s.C.rows(), 0);

    const std::vector<FieldElement> zero_u(static_cast<size_t>(m), ctx.zero());
    for (long n = 0; n < horizon; ++n) {
        std::vector<FieldElement> u = zero_u;
        if (n % (2 * N + 1) == 0) {
            const long i = n / (2 * N + 1);
            if (i >= 1 && i <= m) u[static_cast<size_t>(i - 1)] = ctx.one();
        }
        auto ys = sim.step(u);
        for (size_t si = 0; si < ys.size(); ++si) out[si].append(std::move(ys[si]));
    }
    return out;
}

FieldMatrix assemble_pilot_system(const SymbolSequence& y, int N, int m) {
    const FieldCtx& ctx = y.ctx();
    const int l = y.dim();
    FieldMatrix sys(ctx, (m + 1) * N * l, N + 1);
    int row = 0;
    for (int p = 0; p <= m; ++p)
        for (int t = 1; t <= N; ++t) {
            const long tau = static_cast<long>(2 * N + 1) * p + t;
            for (int r = 0; r < l; ++r) {
                for (int j = 0; j <= N; ++j)
                    sys(row, j) = y.at(tau + j)[static_cast<size_t>(r)];
                ++row;
            }
        }
    return sys;
}

bool pilot_system_accepts(const SymbolSequence& y, int N, int m, const Poly& alpha) {
    return system_accepts(assemble_pilot_system(y, N, m), alpha, N);
}

DifferenceEquation equation_from_response(const std::string& sink, const SymbolSequence& y,
                                          int N, int m, const std::optional<Poly>& forced) {
    const FieldCtx& ctx = y.ctx();
    const int l = y.dim();
    const Poly P = choose_alpha(assemble_pilot_system(y, N, m), N, forced);

    PolyMatrix G(ctx, l, m);
    for (int i = 1; i <= m; ++i) {
        for (int r = 0; r < l; ++r) {
            std::vector<FieldElement> cs(static_cast<size_t>(N) + 1, ctx.zero());
            for (int k = 1; k <= N + 1; ++k) {
                FieldElement acc = ctx.zero();
                for (int j = 0; j <= N; ++j) {
                    const FieldElement aj = P.coeff(j);
                    if (aj.is_zero()) continue;
                    const long idx = static_cast<long>(j) + static_cast<long>(2 * N + 1) * i - k + 1;
                    acc += aj * y.at(idx)[static_cast<size_t>(r)];
                }
                cs[static_cast<size_t>(k - 1)] = acc;
            }
            G(r, i - 1) = Poly(ctx, std::move(cs));
        }
    }
    return {sink, P, std::move(G), N, 2};
}

InitResult initialize_without_reset(const NetworkSpec& spec, const std::vector<uint16_t>& x0,
                                    const std::optional<Poly>& forced) {
    const auto responses = record_pilot_response(spec, x0);
    const auto sink_names = spec.sinks();
    InitResult out;
    for (size_t i = 0; i < responses.size(); ++i)
        out.equations.push_back(equation_from_response(sink_names[i], responses[i], spec.N,
                                                       spec.input_dim(), forced));
    return out;
}

bool verify_difference_equation(const DifferenceEquation& eq, const NetworkSpec& spec,
                                int trials, int horizon, uint64_t seed) {
    if (horizon < eq.N + 2)
        throw Error("verification horizon " + std::to_string(horizon) +
                    " is too short to check anything beyond N = " + std::to_string(eq.N));
    const FieldCtx& ctx = spec.ctx();
    const StateSpace ss = build_state_space(spec);
    const int m = ss.input_dim();
    std::mt19937_64 rng(seed);
    const uint32_t mask = ctx.order() - 1;

    size_t sink_index = ss.sinks.size();
    for (size_t i = 0; i < ss.sinks.size(); ++i)
        if (ss.sinks[i].sink == eq.sink) sink_index = i;
    if (sink_index == ss.sinks.size()) throw ParseError("equation sink not in network");

    for (int t = 0; t < trials; ++t) {
        Simulator sim(ss);
        if (eq.algorithm == 2) {
            std::vector<uint16_t> x0(static_cast<size_t>(ss.state_dim()));
            for (auto& v : x0) v = static_cast<uint16_t>(rng() & mask);
            sim.set_state(x0);
        }
        SymbolSequence u(ctx, m, 0), y(ctx, ss.sinks[sink_index].C.rows(), 0);
        for (int n = 0; n < horizon; ++n) {
            std::vector<uint16_t> un(static_cast<size_t>(m));
            for (auto& v : un) v = static_cast<uint16_t>(rng() & mask);
            u.append_values(un);
            y.append(sim.step_values(un)[sink_index]);
        }
        const long n_lo = eq.algorithm == 1 ? -(eq.N + 2) : 1;
        const long n_hi = static_cast<long>(horizon) - 1 - eq.N;
        for (long n = n_lo; n <= n_hi; ++n) {
            const auto lhs = apply_shift_operator(eq.P, y, n);
            const auto rhs = apply_shift_operator(eq.G, u, n);
            for (size_t i = 0; i < lhs.size(); ++i)
                if (lhs[i] != rhs[i]) return false;
        }
    }
    return true;
}

Trace read_trace(std::istream& in) {
    std::string magic;
    Trace t;
    if (!(in >> magic) || magic != "cnc-trace")
        throw ParseError("trace file must start with 'cnc-trace'");
    if (!(in >> t.sink >> t.l >> t.m >> t.N >> t.algorithm >> t.field >> t.start))
        throw ParseError("malformed trace header");
    if (t.l <= 0 || t.m < 0 || t.N < 0) throw ParseError("nonsensical trace header");
    const FieldCtx& ctx = FieldCtx::parse(t.field);
    uint32_t v;
    std::vector<uint16_t> row;
    while (in >> v) {
        if (v >= ctx.order()) throw ParseError("trace symbol out of field range");
        row.push_back(static_cast<uint16_t>(v));
        if (static_cast<int>(row.size()) == t.l) {
            t.rows.push_back(row);
            row.clear();
        }
    }
    if (!row.empty()) throw ParseError("trace data is not a whole number of rows");
    return t;
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace file '" + path + "'");
    return read_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace) {
    out << "cnc-trace " << trace.sink << " " << trace.l << " " << trace.m << " " << trace.N
        << " " << trace.algorithm << " " << trace.field << " " << trace.start << "\n";
    for (const auto& row : trace.rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
        out << "\n";
    }
}

void write_trace_file(const Trace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write trace file '" + path + "'");
    write_trace(out, trace);
}

MarkovSequence markov_from_trace(const Trace& trace) {
    if (trace.algorithm != 1) throw ParseError("trace does not carry reset-based pilot data");
    const FieldCtx& ctx = FieldCtx::parse(trace.field);
    const int block = 2 * trace.N + 1;
    if (static_cast<int>(trace.rows.size()) != trace.m * block)
        throw ParseError("reset-based trace must hold m blocks of 2N+1 rows");
    MarkovSequence ms{trace.sink, {}};
    ms.M.assign(static_cast<size_t>(block), FieldMatrix(ctx, trace.l, trace.m));
    for (int i = 0; i < trace.m; ++i)
        for (int n = 0; n < block; ++n)
            for (int r = 0; r < trace.l; ++r)
                ms.M[static_cast<size_t>(n)](r, i) =
                    ctx.make(trace.rows[static_cast<size_t>(i * block + n)][static_cast<size_t>(r)]);
    return ms;
}

DifferenceEquation equation_from_trace(const Trace& trace, const std::optional<Poly>& forced) {
    const FieldCtx& ctx = FieldCtx::parse(trace.field);
    if (trace.algorithm == 1) return equation_from_markov(markov_from_trace(trace), trace.N, forced);
    if (trace.algorithm != 2) throw ParseError("trace algorithm tag must be 1 or 2");
    const long need = static_cast<long>(trace.m + 1) * (2 * trace.N + 1);
    if (trace.start + static_cast<long>(trace.rows.size()) < need)
        throw ParseError("reset-free trace too short: need symbols up to time " +
                         std::to_string(need - 1));
    SymbolSequence y(ctx, trace.l, trace.start);
    for (const auto& row : trace.rows) y.append_values(row);
    return equation_from_response(trace.sink, y, trace.N, trace.m, forced);
}

}  // namespace cnc
