#include "cnc/network.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cnc {

namespace {

// Kernel key for a generated input: "u:<node>:<k>", k 1-based.
std::string input_key(const std::string& node, int k) {
    return "u:" + node + ":" + std::to_string(k);
}

struct InputKey {
    std::string node;
    int k;  // 1-based
};

std::optional<InputKey> parse_input_key(const std::string& key) {
    if (key.rfind("u:", 0) != 0) return std::nullopt;
    auto second = key.find(':', 2);
    if (second == std::string::npos) return std::nullopt;
    InputKey out;
    out.node = key.substr(2, second - 2);
    try {
        out.k = std::stoi(key.substr(second + 1));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (out.node.empty() || out.k < 1) return std::nullopt;
    return out;
}

}  // namespace

int NetworkSpec::input_dim() const {
    int m = 0;
    for (const auto& n : nodes) m += n.source_rate;
    return m;
}

const NodeSpec& NetworkSpec::node(const std::string& name) const {
    for (const auto& n : nodes)
        if (n.name == name) return n;
    throw ParseError("unknown node '" + name + "'");
}

const EdgeSpec& NetworkSpec::edge(const std::string& id) const {
    for (const auto& e : edges)
        if (e.id == id) return e;
    throw ParseError("unknown edge '" + id + "'");
}

std::vector<std::string> NetworkSpec::sources() const {
    std::vector<std::string> out;
    for (const auto& n : nodes)
        if (n.is_source()) out.push_back(n.name);
    return out;
}

std::vector<std::string> NetworkSpec::sinks() const {
    std::vector<std::string> out;
    for (const auto& n : nodes)
        if (n.sink) out.push_back(n.name);
    return out;
}

std::vector<std::string> NetworkSpec::in_edges(const std::string& node) const {
    std::vector<std::string> out;
    for (const auto& e : edges)
        if (e.head == node) out.push_back(e.id);
    return out;
}

void NetworkSpec::validate() const {
    if (field == nullptr) throw ParseError("network has no field context");
    std::set<std::string> names;
    for (const auto& n : nodes) {
        if (n.name.empty()) throw ParseError("node with empty name");
        if (!names.insert(n.name).second) throw ParseError("duplicate node name '" + n.name + "'");
        if (n.source_rate < 0) throw ParseError("negative source rate on '" + n.name + "'");
    }
    std::set<std::string> ids;
    for (const auto& e : edges) {
        if (e.id.empty()) throw ParseError("edge with empty id");
        if (!ids.insert(e.id).second) throw ParseError("duplicate edge id '" + e.id + "'");
        if (!names.count(e.tail)) throw ParseError("edge '" + e.id + "' tail '" + e.tail + "' is not a node");
        if (!names.count(e.head)) throw ParseError("edge '" + e.id + "' head '" + e.head + "' is not a node");
    }
    if (N < edge_count())
        throw ParseError("declared N = " + std::to_string(N) + " is below the edge count " +
                         std::to_string(edge_count()));
    for (const auto& [edge_id, coeffs] : kernels) {
        if (!ids.count(edge_id)) throw ParseError("kernels reference unknown edge '" + edge_id + "'");
        const EdgeSpec& e = edge(edge_id);
        const auto tail_in = in_edges(e.tail);
        for (const auto& [key, value] : coeffs) {
            if (value >= field->order())
                throw ParseError("kernel coefficient " + std::to_string(value) +
                                 " out of range for " + field->to_string());
            if (auto ik = parse_input_key(key)) {
                if (ik->node != e.tail)
                    throw ParseError("kernel '" + key + "' on edge '" + edge_id +
                                     "' references inputs of a node other than its tail");
                if (ik->k > node(ik->node).source_rate)
                    throw ParseError("kernel '" + key + "' exceeds source rate of '" + ik->node + "'");
            } else {
                if (std::find(tail_in.begin(), tail_in.end(), key) == tail_in.end())
                    throw ParseError("kernel on edge '" + edge_id + "' references edge '" + key +
                                     "' which does not enter its tail node");
            }
        }
    }
}

StateSpace build_state_space(const NetworkSpec& spec) {
    spec.validate();
    const FieldCtx& ctx = spec.ctx();
    const int ne = spec.edge_count();
    const int m = spec.input_dim();

    std::map<std::string, int> edge_index;
    for (int i = 0; i < ne; ++i) edge_index[spec.edges[static_cast<size_t>(i)].id] = i;

    // Global input columns: sources in declaration order, inputs contiguous.
    std::vector<std::string> input_labels;
    std::map<std::string, int> input_base;
    for (const auto& n : spec.nodes) {
        if (!n.is_source()) continue;
        input_base[n.name] = static_cast<int>(input_labels.size());
        for (int k = 1; k <= n.source_rate; ++k) input_labels.push_back(input_key(n.name, k));
    }

    FieldMatrix A(ctx, ne, ne), B(ctx, ne, m);
    for (int i = 0; i < ne; ++i) {
        const EdgeSpec& e = spec.edges[static_cast<size_t>(i)];
        auto it = spec.kernels.find(e.id);
        if (it == spec.kernels.end()) continue;
        for (const auto& [key, value] : it->second) {
            if (auto ik = parse_input_key(key))
                B(i, input_base.at(ik->node) + ik->k - 1) = ctx.make(value);
            else
                A(i, edge_index.at(key)) = ctx.make(value);
        }
    }

    StateSpace ss{std::move(A), std::move(B), {}, std::move(input_labels), spec.N};
    for (const auto& n : spec.nodes) {
        if (!n.sink) continue;
        std::vector<OutputRow> layout;
        for (const auto& e : spec.edges)
            if (e.head == n.name)
                layout.push_back({true, edge_index.at(e.id), e.id});
        for (int k = 1; k <= n.source_rate; ++k)
            layout.push_back({false, input_base.at(n.name) + k - 1, input_key(n.name, k)});
        const int l = static_cast<int>(layout.size());
        FieldMatrix C(ctx, l, ne), D(ctx, l, m);
        for (int r = 0; r < l; ++r) {
            if (layout[static_cast<size_t>(r)].is_edge)
                C(r, layout[static_cast<size_t>(r)].index) = ctx.one();
            else
                D(r, layout[static_cast<size_t>(r)].index) = ctx.one();
        }
        ss.sinks.push_back({n.name, std::move(C), std::move(D), std::move(layout)});
    }
    return ss;
}

const SinkIO& StateSpace::sink(const std::string& name) const {
    for (const auto& s : sinks)
        if (s.sink == name) return s;
    throw ParseError("unknown sink '" + name + "'");
}

Simulator::Simulator(StateSpace ss)
    : ss_(std::move(ss)), x_(static_cast<size_t>(ss_.state_dim()), ss_.ctx().zero()) {}

void Simulator::set_state(const std::vector<uint16_t>& x0) {
    if (static_cast<int>(x0.size()) != ss_.state_dim())
        throw DimensionError("initial state has dimension " + std::to_string(x0.size()) +
                             ", state dimension is " + std::to_string(ss_.state_dim()));
    x_.clear();
    for (uint16_t v : x0) x_.push_back(ss_.ctx().make(v));
    n_ = 0;
}

void Simulator::reset() {
    std::fill(x_.begin(), x_.end(), ss_.ctx().zero());
    n_ = 0;
}

std::vector<std::vector<FieldElement>> Simulator::step(const std::vector<FieldElement>& u) {
    if (static_cast<int>(u.size()) != ss_.input_dim())
        throw DimensionError("input vector has dimension " + std::to_string(u.size()) +
                             ", expected " + std::to_string(ss_.input_dim()));
    std::vector<std::vector<FieldElement>> outputs;
    outputs.reserve(ss_.sinks.size());
    for (const auto& s : ss_.sinks) {
        auto y = s.C.apply(x_);
        auto du = s.D.apply(u);
        for (size_t i = 0; i < y.size(); ++i) y[i] += du[i];
        outputs.push_back(std::move(y));
    }
    auto next = ss_.A.apply(x_);
    auto bu = ss_.B.apply(u);
    for (size_t i = 0; i < next.size(); ++i) next[i] += bu[i];
    x_ = std::move(next);
    ++n_;
    return outputs;
}

std::vector<std::vector<FieldElement>> Simulator::step_values(const std::vector<uint16_t>& u) {
    std::vector<FieldElement> uu;
    uu.reserve(u.size());
    for (uint16_t v : u) uu.push_back(ss_.ctx().make(v));
    return step(uu);
}

NetworkSpec random_kernels(const NetworkSpec& spec, uint64_t seed) {
    spec.validate();
    NetworkSpec out = spec;
    std::mt19937_64 rng(seed);
    const uint32_t mask = spec.ctx().order() - 1;  // order is a power of two
    auto draw = [&] { return static_cast<uint16_t>(rng() & mask); };
    for (const auto& e : out.edges) {
        auto& coeffs = out.kernels[e.id];
        for (const auto& in : out.in_edges(e.tail))
            if (!coeffs.count(in)) coeffs[in] = draw();
        const NodeSpec& tail = out.node(e.tail);
        for (int k = 1; k <= tail.source_rate; ++k) {
            const std::string key = input_key(tail.name, k);
            if (!coeffs.count(key)) coeffs[key] = draw();
        }
    }
    return out;
}

NetworkSpec reduce_source_rate(const NetworkSpec& spec, const std::string& node, int rate) {
    NetworkSpec out = spec;
    bool found = false;
    for (auto& n : out.nodes) {
        if (n.name != node) continue;
        found = true;
        if (rate < 0 || rate > n.source_rate)
            throw ParseError("rate for '" + node + "' can only be reduced from " +
                             std::to_string(n.source_rate));
        n.source_rate = rate;
    }
    if (!found) throw ParseError("unknown node '" + node + "'");
    for (auto& [edge_id, coeffs] : out.kernels)
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            const auto ik = parse_input_key(it->first);
            it = (ik && ik->node == node && ik->k > rate) ? coeffs.erase(it) : std::next(it);
        }
    out.validate();
    return out;
}

namespace {

using nlohmann::json;

NetworkSpec network_from_json(const json& j, bool fill_from_seed) {
    NetworkSpec spec;
    try {
        spec.field = &FieldCtx::parse(j.value("field", std::string("gf2^8:0x11D")));
        if (!j.contains("nodes") || !j.contains("edges"))
            throw ParseError("topology needs 'nodes' and 'edges'");
        for (const auto& n : j.at("nodes")) {
            NodeSpec node;
            node.name = n.at("name").get<std::string>();
            node.source_rate = n.value("source_rate", 0);
            node.sink = n.value("sink", false);
            spec.nodes.push_back(std::move(node));
        }
        for (const auto& e : j.at("edges")) {
            spec.edges.push_back({e.at("id").get<std::string>(), e.at("tail").get<std::string>(),
                                  e.at("head").get<std::string>()});
        }
        if (j.contains("kernels"))
            for (const auto& [edge_id, coeffs] : j.at("kernels").items()) {
                auto& dst = spec.kernels[edge_id];
                for (const auto& [key, value] : coeffs.items())
                    dst[key] = static_cast<uint16_t>(value.get<uint32_t>());
            }
        spec.N = j.value("N", spec.edge_count());
        if (j.contains("seed") && !j.at("seed").is_null())
            spec.seed = j.at("seed").get<uint64_t>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed topology: ") + e.what());
    }
    spec.validate();
    if (fill_from_seed && spec.seed) return random_kernels(spec, *spec.seed);
    return spec;
}

}  // namespace

NetworkSpec parse_network(const std::string& json_text, bool fill_from_seed) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("topology is not valid JSON: ") + e.what());
    }
    return network_from_json(j, fill_from_seed);
}

NetworkSpec load_network(const std::string& path, bool fill_from_seed) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open topology file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str(), fill_from_seed);
}

std::string network_to_json(const NetworkSpec& spec) {
    json j;
    j["field"] = spec.ctx().to_string();
    j["nodes"] = json::array();
    for (const auto& n : spec.nodes) {
        json node;
        node["name"] = n.name;
        if (n.source_rate > 0) node["source_rate"] = n.source_rate;
        if (n.sink) node["sink"] = true;
        j["nodes"].push_back(node);
    }
    j["edges"] = json::array();
    for (const auto& e : spec.edges)
        j["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    json kernels = json::object();
    for (const auto& [edge_id, coeffs] : spec.kernels) {
        json entry = json::object();
        for (const auto& [key, value] : coeffs) entry[key] = value;
        kernels[edge_id] = entry;
    }
    j["kernels"] = kernels;
    j["N"] = spec.N;
    j["seed"] = spec.seed ? json(*spec.seed) : json(nullptr);
    return j.dump(2) + "\n";
}

void save_network(const NetworkSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write topology file '" + path + "'");
    out << network_to_json(spec);
}

}  // namespace cnc
