#ifndef CNC_DECODE_HPP
#define CNC_DECODE_HPP

#include <optional>
#include <string>

#include "cnc/init.hpp"

namespace cnc {

/// Everything the sequential decoder needs, derived once from a difference
/// equation: the retained full-rank row subset, adj and det of the reduced
/// square transfer matrix (both scaled so f is monic), and the decoding
/// delay deg(f). For tag-2 equations, known_prefix supplies u[0..N]
/// (zeros by default, matching the quiet tail of the pilot schedule).
struct DecoderPlan {
    DifferenceEquation eq;
    std::vector<int> retained_rows;
    PolyMatrix adj_g;  // adj of the reduced matrix, scaled monic with f
    Poly f;            // det of the reduced matrix, monic
    int delay = 0;     // deg f
    FieldElement leading_inv;
    SymbolSequence known_prefix;

    const FieldCtx& ctx() const { return eq.P.ctx(); }
};

/// Builds a plan; throws UndecodableError when G lacks full column rank
/// (the rates must be reduced, see the capacity module).
DecoderPlan build_plan(const DifferenceEquation& eq);
DecoderPlan build_plan(const DifferenceEquation& eq, SymbolSequence known_prefix);

/// Recovers u[0 .. upto - delay] from y covering [start, upto]. The spliced
/// sequence q equals P(z) y_d for n >= 1 (for tag-1 equations, everywhere)
/// and G(z) u from the known prefix for n <= 0; then adj(G) q = f u and a
/// scalar recursion in f yields u. Throws NeedsMoreSymbolsError when y does
/// not reach far enough.
SymbolSequence decode_stream(const DecoderPlan& plan, const SymbolSequence& y, long upto);

/// Incremental form of the same recursion: feed y_d one time step at a
/// time. Nothing comes out while the pipeline primes; afterwards every push
/// yields at most one newly recovered input vector, and drain() flushes
/// whatever the buffered symbols still determine. Output values are
/// identical to decode_stream on the same data.
class StreamDecoder {
   public:
    explicit StreamDecoder(DecoderPlan plan, long y_start_time = 0);

    std::optional<std::vector<FieldElement>> push(std::vector<FieldElement> y_n);
    std::optional<std::vector<FieldElement>> push_values(const std::vector<uint16_t>& y_n);
    std::vector<std::vector<FieldElement>> drain();

    /// Time index of the next input vector to be recovered.
    long next_output_time() const { return next_; }

   private:
    std::optional<std::vector<FieldElement>> try_next();

    DecoderPlan plan_;
    SymbolSequence y_;
    std::vector<std::vector<FieldElement>> history_;
    long next_ = 0;
};

std::string plan_to_json(const DecoderPlan& plan);
DecoderPlan parse_plan(const std::string& json_text);
DecoderPlan read_plan_file(const std::string& path);
void write_plan_file(const DecoderPlan& plan, const std::string& path);

}  // namespace cnc

#endif
