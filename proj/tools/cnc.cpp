// cnc — simulate unit-delay coding networks, recover per-sink decoding
// equations from pilot measurements, decode recorded streams, and
// enumerate achievable rate tuples.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cnc/capacity.hpp"
#include "cnc/decode.hpp"
#include "cnc/init.hpp"
#include "cnc/network.hpp"

namespace {

// Exit codes, also part of the CLI contract:
//   0 success, 1 internal error, 2 parse/usage error,
//   3 initialization failure, 4 undecodable / rank deficient,
//   5 trace too short for the requested decode.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitInit = 3;
constexpr int kExitUndecodable = 4;
constexpr int kExitNeedsMore = 5;

std::vector<uint16_t> parse_x0(const std::string& text, int dim) {
    std::vector<uint16_t> out;
    if (text == "zero" || text.empty()) {
        out.assign(static_cast<size_t>(dim), 0);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(static_cast<uint16_t>(std::stoul(item)));
        } catch (const std::exception&) {
            throw cnc::ParseError("bad --x0 entry '" + item + "'");
        }
    }
    if (static_cast<int>(out.size()) != dim)
        throw cnc::ParseError("--x0 has " + std::to_string(out.size()) +
                              " entries, state dimension is " + std::to_string(dim));
    return out;
}

cnc::NetworkSpec load_spec(const std::string& path, int n_override, const std::string& rates,
                           std::optional<uint64_t> seed) {
    cnc::NetworkSpec spec = cnc::load_network(path, /*fill_from_seed=*/!seed.has_value());
    if (seed) spec = cnc::random_kernels(spec, *seed);
    // "--rates s1=1,s2=0": reduce rates by sending zeros on the dropped inputs
    if (!rates.empty()) {
        std::stringstream ss(rates);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            int rate = -1;
            if (eq != std::string::npos) {
                try {
                    rate = std::stoi(item.substr(eq + 1));
                } catch (const std::exception&) {
                    rate = -1;
                }
            }
            if (rate < 0) throw cnc::ParseError("bad --rates entry '" + item + "'");
            spec = cnc::reduce_source_rate(spec, item.substr(0, eq), rate);
        }
    }
    if (n_override > 0) {
        if (n_override < spec.edge_count())
            throw cnc::ParseError("--N " + std::to_string(n_override) +
                                  " is below the edge count " + std::to_string(spec.edge_count()));
        spec.N = n_override;
    }
    return spec;
}

std::optional<cnc::Poly> parse_alpha(const cnc::FieldCtx& ctx, const std::string& text) {
    if (text.empty()) return std::nullopt;
    return cnc::Poly::parse(ctx, text);
}

int cmd_gen_kernels(const std::string& topology, std::optional<uint64_t> seed,
                    const std::string& out_path) {
    cnc::NetworkSpec spec = cnc::load_network(topology, /*fill_from_seed=*/false);
    if (!seed && spec.seed) seed = spec.seed;
    if (!seed) throw cnc::ParseError("gen-kernels needs --seed (or a non-null seed in the file)");
    spec.seed = seed;
    cnc::NetworkSpec filled = cnc::random_kernels(spec, *seed);
    if (out_path.empty())
        std::cout << cnc::network_to_json(filled);
    else
        cnc::save_network(filled, out_path);
    return kExitOk;
}

// Runs a pilot schedule and writes per-sink trace files that `init --trace`
// can consume offline: tag 1 records the m reset-separated impulse runs back
// to back, tag 2 the single reset-free recording from --x0.
int cmd_record_pilots(const cnc::NetworkSpec& spec, int alg, const std::string& x0_text,
                      const std::string& out_prefix) {
    if (out_prefix.empty()) throw cnc::ParseError("--pilots needs --out <prefix>");
    const cnc::StateSpace ss = cnc::build_state_space(spec);
    const int m = ss.input_dim();
    const auto sink_names = spec.sinks();
    std::vector<cnc::Trace> traces;
    for (const auto& s : ss.sinks)
        traces.push_back({s.sink, s.C.rows(), m, spec.N, alg, spec.ctx().to_string(), 0, {}});

    if (alg == 1) {
        const auto markov = cnc::collect_markov(spec);
        for (size_t si = 0; si < markov.size(); ++si)
            for (int i = 0; i < m; ++i)
                for (int n = 0; n <= 2 * spec.N; ++n) {
                    std::vector<uint16_t> row;
                    for (int r = 0; r < traces[si].l; ++r)
                        row.push_back(markov[si].M[static_cast<size_t>(n)](r, i).value());
                    traces[si].rows.push_back(std::move(row));
                }
    } else {
        std::vector<uint16_t> x0(static_cast<size_t>(spec.edge_count()), 0);
        if (!x0_text.empty()) x0 = parse_x0(x0_text, spec.edge_count());
        const auto responses = cnc::record_pilot_response(spec, x0);
        for (size_t si = 0; si < responses.size(); ++si)
            for (long n = 0; n <= responses[si].defined_until(); ++n) {
                std::vector<uint16_t> row;
                for (const auto& e : responses[si].at(n)) row.push_back(e.value());
                traces[si].rows.push_back(std::move(row));
            }
    }
    for (const auto& t : traces) {
        const std::string path = out_prefix + t.sink + ".trace";
        cnc::write_trace_file(t, path);
        std::cout << "wrote " << path << " (" << t.rows.size() << " rows)\n";
    }
    return kExitOk;
}

int cmd_simulate(const cnc::NetworkSpec& spec, const std::string& x0_text, int steps,
                 const std::string& impulse, const std::string& input_path,
                 const std::string& out_prefix) {
    const cnc::StateSpace ss = cnc::build_state_space(spec);
    const int m = ss.input_dim();
    cnc::Simulator sim(ss);
    if (!x0_text.empty() && x0_text != "zero") sim.set_state(parse_x0(x0_text, ss.state_dim()));

    // Input schedule: a single impulse on one input, or a file with one line
    // of m integers per step (missing steps are zero).
    int impulse_index = -1;
    if (!impulse.empty()) {
        for (size_t i = 0; i < ss.input_labels.size(); ++i)
            if (ss.input_labels[i] == impulse) impulse_index = static_cast<int>(i);
        if (impulse_index < 0)
            throw cnc::ParseError("--impulse '" + impulse + "' is not an input (use u:<node>:<k>)");
    }
    std::vector<std::vector<uint16_t>> inputs;
    if (!input_path.empty()) {
        std::ifstream in(input_path);
        if (!in) throw cnc::ParseError("cannot open input file '" + input_path + "'");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::stringstream ls(line);
            std::vector<uint16_t> row;
            uint32_t v;
            while (ls >> v) row.push_back(static_cast<uint16_t>(v));
            if (static_cast<int>(row.size()) != m)
                throw cnc::ParseError("input line needs " + std::to_string(m) + " symbols");
            inputs.push_back(std::move(row));
        }
    }

    std::vector<cnc::Trace> traces;
    for (const auto& s : ss.sinks)
        traces.push_back({s.sink, s.C.rows(), m, spec.N, 0, spec.ctx().to_string(), 0, {}});

    for (int n = 0; n < steps; ++n) {
        std::vector<uint16_t> u(static_cast<size_t>(m), 0);
        if (impulse_index >= 0 && n == 0) u[static_cast<size_t>(impulse_index)] = 1;
        if (n < static_cast<int>(inputs.size())) u = inputs[static_cast<size_t>(n)];
        const auto ys = sim.step_values(u);
        for (size_t si = 0; si < ys.size(); ++si) {
            std::vector<uint16_t> row;
            std::ostringstream line;
            for (size_t i = 0; i < ys[si].size(); ++i) {
                row.push_back(ys[si][i].value());
                line << (i ? " " : "") << ys[si][i].value();
            }
            traces[si].rows.push_back(std::move(row));
            if (ss.sinks.size() == 1)
                std::cout << line.str() << "\n";
            else
                std::cout << ss.sinks[si].sink << ": " << line.str() << "\n";
        }
    }
    if (!out_prefix.empty())
        for (const auto& t : traces) cnc::write_trace_file(t, out_prefix + t.sink + ".trace");
    return kExitOk;
}

int cmd_init(const cnc::NetworkSpec& spec, int alg, const std::string& x0_text,
             const std::string& alpha_text, int trials, int horizon,
             const std::string& out_prefix, const std::vector<std::string>& trace_paths) {
    const auto forced = parse_alpha(spec.ctx(), alpha_text);
    cnc::InitResult result;
    if (!trace_paths.empty()) {
        for (const auto& path : trace_paths) {
            const cnc::Trace trace = cnc::read_trace_file(path);
            result.equations.push_back(cnc::equation_from_trace(trace, forced));
        }
    } else if (alg == 1) {
        result = cnc::initialize_with_reset(spec, forced);
    } else {
        std::vector<uint16_t> x0(static_cast<size_t>(spec.edge_count()), 0);
        if (!x0_text.empty()) x0 = parse_x0(x0_text, spec.edge_count());
        result = cnc::initialize_without_reset(spec, x0, forced);
    }

    bool all_decodable = true;
    for (const auto& eq : result.equations) {
        const bool verified = cnc::verify_difference_equation(eq, spec, trials, horizon);
        std::cout << "sink " << eq.sink << "\n";
        std::cout << "  P = " << eq.P.to_string() << "\n";
        std::cout << "  G = " << eq.G.to_string() << "\n";
        std::cout << "  verified: " << (verified ? "yes" : "NO") << " (" << trials << " trials, "
                  << horizon << " steps)\n";
        if (!out_prefix.empty()) {
            std::ofstream eq_out(out_prefix + eq.sink + ".eq.json");
            eq_out << "{\n  \"format\": \"cnc-eq\",\n  \"field\": \"" << spec.ctx().to_string()
                   << "\",\n  \"sink\": \"" << eq.sink << "\",\n  \"N\": " << eq.N
                   << ",\n  \"alg\": " << eq.algorithm << ",\n  \"P\": \"" << eq.P.to_string()
                   << "\",\n  \"G\": \"" << eq.G.to_string() << "\",\n  \"verified\": "
                   << (verified ? "true" : "false") << "\n}\n";
        }
        try {
            const cnc::DecoderPlan plan = cnc::build_plan(eq);
            std::cout << "  decodable: yes, delay " << plan.delay << "\n";
            if (!out_prefix.empty())
                cnc::write_plan_file(plan, out_prefix + eq.sink + ".plan.json");
        } catch (const cnc::UndecodableError& e) {
            all_decodable = false;
            std::cout << "  decodable: NO — " << e.what() << "\n";
        }
        if (!verified) return kExitInit;
    }
    return all_decodable ? kExitOk : kExitUndecodable;
}

int cmd_decode(const std::string& plan_path, const std::string& trace_path, long upto,
               const std::string& out_path) {
    const cnc::DecoderPlan plan = cnc::read_plan_file(plan_path);
    const cnc::Trace trace = cnc::read_trace_file(trace_path);
    const cnc::FieldCtx& ctx = cnc::FieldCtx::parse(trace.field);
    if (!ctx.same_field(plan.ctx()))
        throw cnc::ParseError("plan and trace use different fields");
    if (trace.l != plan.eq.G.rows())
        throw cnc::ParseError("trace symbol dimension " + std::to_string(trace.l) +
                              " does not match the plan's " + std::to_string(plan.eq.G.rows()));
    cnc::SymbolSequence y(ctx, trace.l, trace.start);
    for (const auto& row : trace.rows) y.append_values(row);
    if (upto < 0) upto = y.defined_until();

    const cnc::SymbolSequence u = cnc::decode_stream(plan, y, upto);
    std::ostringstream body;
    for (long n = 0; n <= u.defined_until(); ++n) {
        const auto v = u.at(n);
        for (size_t i = 0; i < v.size(); ++i) body << (i ? " " : "") << v[i].value();
        body << "\n";
    }
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        out << body.str();
    }
    return kExitOk;
}

int cmd_capacity(const cnc::NetworkSpec& spec, int alg, const std::string& x0_text, bool full) {
    cnc::InitResult result;
    if (alg == 1) {
        result = cnc::initialize_with_reset(spec);
    } else {
        std::vector<uint16_t> x0(static_cast<size_t>(spec.edge_count()), 0);
        if (!x0_text.empty()) x0 = parse_x0(x0_text, spec.edge_count());
        result = cnc::initialize_without_reset(spec, x0);
    }
    std::vector<std::string> sources = spec.sources();
    std::vector<int> rates;
    for (const auto& s : sources) rates.push_back(spec.node(s).source_rate);

    std::vector<std::pair<std::string, std::vector<cnc::PolyMatrix>>> blocks;
    for (const auto& eq : result.equations)
        blocks.emplace_back(eq.sink, cnc::split_by_source(eq.G, rates));
    const cnc::RateRegion region = cnc::enumerate_region(blocks, sources, rates);

    auto print_tuple = [](const std::vector<int>& t) {
        std::ostringstream os;
        os << "(";
        for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
        os << ")";
        return os.str();
    };
    std::cout << "sources:";
    for (size_t i = 0; i < sources.size(); ++i)
        std::cout << " " << sources[i] << "(R=" << rates[i] << ")";
    std::cout << "\nmaximal achievable tuples:";
    for (const auto& t : region.maximal()) std::cout << " " << print_tuple(t);
    std::cout << "\n";
    if (full) {
        std::cout << "full region:\n";
        for (const auto& t : region.achievable) std::cout << "  " << print_tuple(t) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convolutional network coding: simulate, initialize, decode, rate region"};
    app.require_subcommand(1);

    std::string topology, x0_text, alpha_text, rates_text, out_path, impulse, input_path;
    std::string plan_path, trace_path;
    std::vector<std::string> trace_paths;
    int alg = 1, steps = 16, n_override = 0, trials = 10, horizon = 100, pilots = 0;
    long upto = -1;
    bool full = false;
    std::optional<uint64_t> seed;

    auto* gen = app.add_subcommand("gen-kernels", "fill omitted kernels from a seed");
    gen->add_option("topology", topology)->required();
    gen->add_option("--seed", seed, "RNG seed (overrides the file's)");
    gen->add_option("--out", out_path, "output topology path (default: stdout)");

    auto* sim = app.add_subcommand("simulate", "run the network and print sink outputs");
    sim->add_option("topology", topology)->required();
    sim->add_option("--steps", steps, "number of time steps");
    sim->add_option("--impulse", impulse, "send 1 on this input (u:<node>:<k>) at n=0");
    sim->add_option("--input", input_path, "file with one line of m input symbols per step");
    sim->add_option("--pilots", pilots, "record the pilot schedule (1 or 2) instead of --input")
        ->check(CLI::Range(1, 2));
    sim->add_option("--x0", x0_text, "initial state, comma-separated or 'zero'");
    sim->add_option("--seed", seed, "draw omitted kernels from this seed");
    sim->add_option("--N", n_override, "override the declared edge bound");
    sim->add_option("--rates", rates_text, "reduce source rates, e.g. s1=1,s2=0");
    sim->add_option("--out", out_path, "write per-sink trace files with this prefix");

    auto* init = app.add_subcommand("init", "recover per-sink decoding equations");
    init->add_option("topology", topology)->required();
    init->add_option("--alg", alg, "1 = with reset, 2 = reset-free")->check(CLI::Range(1, 2));
    init->add_option("--x0", x0_text, "initial state for --alg 2");
    init->add_option("--alpha", alpha_text, "force this P(z) instead of the canonical solution");
    init->add_option("--seed", seed, "draw omitted kernels from this seed");
    init->add_option("--N", n_override, "override the declared edge bound");
    init->add_option("--rates", rates_text, "reduce source rates, e.g. s1=1,s2=0");
    init->add_option("--trials", trials, "verification trials");
    init->add_option("--horizon", horizon, "verification horizon");
    init->add_option("--trace", trace_paths, "recorded per-sink trace files instead of simulation");
    init->add_option("--out", out_path, "prefix for <sink>.eq.json / <sink>.plan.json");

    auto* dec = app.add_subcommand("decode", "decode a recorded trace with a plan");
    dec->add_option("--plan", plan_path)->required();
    dec->add_option("--trace", trace_path)->required();
    dec->add_option("--upto", upto, "decode using y up to this time (default: all)");
    dec->add_option("--out", out_path, "output file (default: stdout)");

    auto* cap = app.add_subcommand("capacity", "enumerate achievable rate tuples");
    cap->add_option("topology", topology)->required();
    cap->add_option("--alg", alg, "1 = with reset, 2 = reset-free")->check(CLI::Range(1, 2));
    cap->add_option("--x0", x0_text, "initial state for --alg 2");
    cap->add_option("--seed", seed, "draw omitted kernels from this seed");
    cap->add_option("--N", n_override, "override the declared edge bound");
    cap->add_option("--rates", rates_text, "reduce source rates before probing");
    cap->add_flag("--full", full, "print the whole region, not just maximal tuples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    try {
        if (gen->parsed()) return cmd_gen_kernels(topology, seed, out_path);
        if (sim->parsed()) {
            const auto spec = load_spec(topology, n_override, rates_text, seed);
            if (pilots != 0) return cmd_record_pilots(spec, pilots, x0_text, out_path);
            return cmd_simulate(spec, x0_text, steps, impulse, input_path, out_path);
        }
        if (init->parsed())
            return cmd_init(load_spec(topology, n_override, rates_text, seed), alg, x0_text,
                            alpha_text, trials, horizon, out_path, trace_paths);
        if (dec->parsed()) return cmd_decode(plan_path, trace_path, upto, out_path);
        if (cap->parsed())
            return cmd_capacity(load_spec(topology, n_override, rates_text, seed), alg, x0_text,
                                full);
    } catch (const cnc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const cnc::InitializationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInit;
    } catch (const cnc::UndecodableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUndecodable;
    } catch (const cnc::NeedsMoreSymbolsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNeedsMore;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
