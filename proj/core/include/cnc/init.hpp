#ifndef CNC_INIT_HPP
#define CNC_INIT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cnc/network.hpp"
#include "cnc/polymat.hpp"

namespace cnc {

/// Impulse-response matrices M_d[0..2N] measured at one sink: column i of
/// M_d[n] is the output at time n of the pilot run that sent basis vector
/// e_i at time 0 from a cleared network. M_d[0] equals D_d.
struct MarkovSequence {
    std::string sink;
    std::vector<FieldMatrix> M;
};

/// Per-sink decoding relation P(z) y_d = G(z) u. With algorithm tag 1 the
/// relation holds for all n; with tag 2 for n >= 1.
struct DifferenceEquation {
    std::string sink;
    Poly P;
    PolyMatrix G;
    int N = 0;
    int algorithm = 1;
};

struct InitResult {
    std::vector<MarkovSequence> markov;  // empty for the reset-free variant
    std::vector<DifferenceEquation> equations;
};

/// Runs the reset-based pilot schedule: for each of the m basis inputs,
/// 2N+1 steps from a cleared network, recording every sink's outputs.
std::vector<MarkovSequence> collect_markov(const NetworkSpec& spec);

/// Linear system solved for the coefficients of P: row block tau = 1..N,
/// one scalar equation per (tau, output row, input column); column k holds
/// M[k + tau] entries.
FieldMatrix assemble_impulse_system(const MarkovSequence& markov, int N);

/// Residual of a candidate coefficient vector in the impulse system.
bool impulse_system_accepts(const MarkovSequence& markov, int N, const Poly& alpha);

/// Builds the difference equation from measured impulse responses. With no
/// forced polynomial, takes the canonical kernel solution of lowest degree,
/// monic-normalized; a forced polynomial is validated against the system.
DifferenceEquation equation_from_markov(const MarkovSequence& markov, int N,
                                        const std::optional<Poly>& forced = std::nullopt);

/// Reset-based initialization end to end.
InitResult initialize_with_reset(const NetworkSpec& spec,
                                 const std::optional<Poly>& forced = std::nullopt);

/// Records the reset-free pilot schedule (input i fires at time (2N+1)i) over
/// (m+1)(2N+1) steps from the given initial state, per sink.
std::vector<SymbolSequence> record_pilot_response(const NetworkSpec& spec,
                                                  const std::vector<uint16_t>& x0);

/// Linear system for the reset-free variant: row blocks
/// tau in {(2N+1)p + 1 .. (2N+1)p + N}, p = 0..m; column j holds y[j + tau].
FieldMatrix assemble_pilot_system(const SymbolSequence& y, int N, int m);

bool pilot_system_accepts(const SymbolSequence& y, int N, int m, const Poly& alpha);

/// Builds the difference equation from a recorded reset-free response.
/// A trace that starts at 2N+1 (initial quiet block skipped, zero state
/// asserted) is handled by the sequence's implicit leading zeros.
DifferenceEquation equation_from_response(const std::string& sink, const SymbolSequence& y,
                                          int N, int m,
                                          const std::optional<Poly>& forced = std::nullopt);

/// Reset-free initialization end to end; x0 may be any (unknown) state.
InitResult initialize_without_reset(const NetworkSpec& spec, const std::vector<uint16_t>& x0,
                                    const std::optional<Poly>& forced = std::nullopt);

/// Simulates random input streams (and random initial states for tag-2
/// equations) and checks (P y_d)[n] = (G u)[n] exactly over the valid range:
/// all n for tag 1, n >= 1 for tag 2.
bool verify_difference_equation(const DifferenceEquation& eq, const NetworkSpec& spec,
                                int trials, int horizon, uint64_t seed = 0x5eed);

/// Recorded pilot measurements for one sink, as stored in trace files:
/// a header line "cnc-trace <sink> <l> <m> <N> <alg> <field> <start>",
/// then one line of l integers per time step. Algorithm tag 1 stores the m
/// reset-separated runs back to back (m blocks of 2N+1 lines); tag 2 stores
/// the single run; tag 0 is a free-running capture used by the decoder.
struct Trace {
    std::string sink;
    int l = 0;
    int m = 0;
    int N = 0;
    int algorithm = 1;
    std::string field;
    long start = 0;
    std::vector<std::vector<uint16_t>> rows;
};

Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const Trace& trace, const std::string& path);

/// Rebuilds the per-sink difference equation from a recorded trace,
/// dispatching on the trace's algorithm tag.
DifferenceEquation equation_from_trace(const Trace& trace,
                                       const std::optional<Poly>& forced = std::nullopt);

/// Markov matrices reshaped from an algorithm-1 trace.
MarkovSequence markov_from_trace(const Trace& trace);

}  // namespace cnc

#endif
