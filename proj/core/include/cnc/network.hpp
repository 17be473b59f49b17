#ifndef CNC_NETWORK_HPP
#define CNC_NETWORK_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cnc/linalg.hpp"

namespace cnc {

struct NodeSpec {
    std::string name;
    int source_rate = 0;  // R_s; 0 means not a source
    bool sink = false;
    bool is_source() const { return source_rate > 0; }
};

struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
};

/// Topology plus local encoding kernels. Kernel keys follow the topology
/// file: "<edge_id>" for a coefficient applied to a received symbol,
/// "u:<node>:<k>" (1-based k) for one applied to the tail's k-th generated
/// input. Omitted coefficients are zero unless `seed` is set, in which case
/// loaders draw them uniformly via random_kernels.
struct NetworkSpec {
    const FieldCtx* field = nullptr;
    std::vector<NodeSpec> nodes;
    std::vector<EdgeSpec> edges;
    std::map<std::string, std::map<std::string, uint16_t>> kernels;  // edge -> key -> coeff
    int N = 0;  // declared upper bound on |edges|
    std::optional<uint64_t> seed;

    const FieldCtx& ctx() const { return *field; }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int input_dim() const;  // m = sum of source rates
    const NodeSpec& node(const std::string& name) const;
    const EdgeSpec& edge(const std::string& id) const;
    std::vector<std::string> sources() const;  // declaration order
    std::vector<std::string> sinks() const;    // declaration order
    std::vector<std::string> in_edges(const std::string& node) const;  // declaration order

    /// Structural validation: unique names/ids, endpoints exist, kernels
    /// reference adjacent edges / valid inputs, N >= |edges|.
    void validate() const;
};

/// One row of a sink's output vector: either a received edge symbol or one
/// of the sink's own generated inputs.
struct OutputRow {
    bool is_edge;
    int index;          // state index (edge) or global input index
    std::string label;  // edge id or "u:<node>:<k>"
};

struct SinkIO {
    std::string sink;
    FieldMatrix C;  // l_d x |E|, zeros and ones
    FieldMatrix D;  // l_d x m, zeros and ones
    std::vector<OutputRow> layout;
};

/// State-space form of the network: x[n+1] = A x[n] + B u[n],
/// y_d[n] = C_d x[n] + D_d u[n] per sink. State order is edge declaration
/// order; input order is source declaration order with each source's inputs
/// contiguous; output rows are incoming edges first, then own inputs.
struct StateSpace {
    FieldMatrix A;  // |E| x |E|
    FieldMatrix B;  // |E| x m
    std::vector<SinkIO> sinks;
    std::vector<std::string> input_labels;  // "u:<node>:<k>" per column of B
    int declared_n = 0;                     // the topology's declared N (>= |E|)

    const FieldCtx& ctx() const { return A.ctx(); }
    int state_dim() const { return A.rows(); }
    int input_dim() const { return B.cols(); }
    const SinkIO& sink(const std::string& name) const;
};

StateSpace build_state_space(const NetworkSpec& spec);

/// Cycle-accurate simulator; owns a copy of the state-space description.
/// Each step emits y_d for the current time from the current state, then
/// advances. Not shareable across threads; run concurrent simulations on
/// separate instances.
class Simulator {
   public:
    explicit Simulator(StateSpace ss);

    /// Sets x[0]; values must match the state dimension.
    void set_state(const std::vector<uint16_t>& x0);
    void reset();  // x = 0, n = 0
    long time() const { return n_; }
    const std::vector<FieldElement>& state() const { return x_; }

    /// Emits y_d[n] per sink (StateSpace sink order), then advances to n+1.
    std::vector<std::vector<FieldElement>> step(const std::vector<FieldElement>& u);
    std::vector<std::vector<FieldElement>> step_values(const std::vector<uint16_t>& u);

   private:
    StateSpace ss_;
    std::vector<FieldElement> x_;
    long n_ = 0;
};

/// Draws every admissible kernel coefficient not already present, uniformly
/// over the field, deterministically from the seed. Iteration order: edges
/// by declaration, in-edges of the tail by declaration, then generated
/// inputs by index.
NetworkSpec random_kernels(const NetworkSpec& spec, uint64_t seed);

/// Reduces a source's rate to `rate` (the dropped inputs send zeros, so
/// their kernel coefficients disappear). Only reductions are allowed.
NetworkSpec reduce_source_rate(const NetworkSpec& spec, const std::string& node, int rate);

/// Topology file I/O (JSON). With fill_from_seed, a file that omits kernels
/// but carries a non-null seed is completed via random_kernels.
NetworkSpec load_network(const std::string& path, bool fill_from_seed = true);
NetworkSpec parse_network(const std::string& json_text, bool fill_from_seed = true);
std::string network_to_json(const NetworkSpec& spec);
void save_network(const NetworkSpec& spec, const std::string& path);

}  // namespace cnc

#endif
