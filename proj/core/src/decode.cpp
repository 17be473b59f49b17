#include "cnc/decode.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cnc {

namespace {

SymbolSequence zero_prefix(const FieldCtx& ctx, int dim, int N) {
    SymbolSequence s(ctx, dim, 0);
    for (int n = 0; n <= N; ++n)
        s.append(std::vector<FieldElement>(static_cast<size_t>(dim), ctx.zero()));
    return s;
}

}  // namespace

DecoderPlan build_plan(const DifferenceEquation& eq) {
    return build_plan(eq, zero_prefix(eq.P.ctx(), eq.G.cols(), eq.N));
}

DecoderPlan build_plan(const DifferenceEquation& eq, SymbolSequence known_prefix) {
    const FieldCtx& ctx = eq.P.ctx();
    const int m = eq.G.cols();
    if (known_prefix.dim() != m)
        throw DimensionError("known prefix dimension does not match the input dimension");
    if (eq.algorithm == 2 && known_prefix.defined_until() < eq.N)
        throw DimensionError("known prefix must cover u[0..N]");
    if (eq.P.is_zero()) throw UndecodableError("difference equation has zero P(z)");
    if (rank_over_ring(eq.G) < m)
        throw UndecodableError(
            "transfer matrix is rank deficient over F[z]: the input cannot be recovered at these "
            "rates; reduce some source rates (see the capacity region)");

    auto selection = select_full_rank_rows(eq.G);
    Poly f = det(selection.matrix);
    PolyMatrix adj = adjugate(selection.matrix);
    const FieldElement scale = f.leading().inv();
    f = f * scale;
    adj = adj * scale;
    const int delay = *f.degree();
    return DecoderPlan{eq,
                       std::move(selection.rows),
                       std::move(adj),
                       std::move(f),
                       delay,
                       ctx.one(),  // f is monic after scaling
                       std::move(known_prefix)};
}

namespace {

// Shared recursion engine for the batch and incremental decoders. Reads y
// and the already-recovered history, caches the spliced q values, and
// throws NeedsMoreSymbolsError when the next step needs unseen output.
class DecodeCore {
   public:
    DecodeCore(const DecoderPlan& plan, const SymbolSequence& y)
        : plan_(plan), y_(y), ctx_(plan.ctx()),
          g_reduced_(plan.eq.G.select_rows(plan.retained_rows)),
          deg_adj_(std::max(plan.adj_g.max_degree(), 0)),
          adj_coeffs_(), k_(plan.delay) {
        for (int j = 0; j <= deg_adj_; ++j) adj_coeffs_.push_back(plan.adj_g.coeff(j));
    }

    /// u[n] = f_k^{-1} (w[n-k] - sum_{i<k} f_i u[n-k+i]); f is monic and
    /// inputs before time 0 are zero.
    std::vector<FieldElement> next(long n, const std::vector<std::vector<FieldElement>>& history) {
        auto acc = w_at(n - k_);
        for (int i = 0; i < k_; ++i) {
            const FieldElement fi = plan_.f.coeff(i);
            if (fi.is_zero()) continue;
            const long idx = n - k_ + i;
            if (idx < 0) continue;
            const auto& prev = history[static_cast<size_t>(idx)];
            for (size_t c = 0; c < acc.size(); ++c) acc[c] += fi * prev[c];
        }
        for (auto& x : acc) x *= plan_.leading_inv;
        return acc;
    }

   private:
    // q[n] restricted to the retained rows: P(z) y_d for n >= 1 (tag-1
    // relations hold everywhere), G(z) u from the known prefix for n <= 0.
    const std::vector<FieldElement>& q_at(long n) {
        auto it = q_cache_.find(n);
        if (it != q_cache_.end()) return it->second;
        std::vector<FieldElement> value;
        if (plan_.eq.algorithm != 1 && n <= 0) {
            value = apply_shift_operator(g_reduced_, plan_.known_prefix, n);
        } else {
            const auto full = apply_shift_operator(plan_.eq.P, y_, n);
            value.reserve(plan_.retained_rows.size());
            for (int r : plan_.retained_rows) value.push_back(full[static_cast<size_t>(r)]);
        }
        return q_cache_.emplace(n, std::move(value)).first->second;
    }

    // w = adj(G) q = f u
    std::vector<FieldElement> w_at(long n) {
        std::vector<FieldElement> acc(static_cast<size_t>(g_reduced_.cols()), ctx_.zero());
        for (int j = 0; j <= deg_adj_; ++j) {
            if (adj_coeffs_[static_cast<size_t>(j)].is_zero()) continue;
            const auto v = adj_coeffs_[static_cast<size_t>(j)].apply(q_at(n + j));
            for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
        }
        return acc;
    }

    const DecoderPlan& plan_;
    const SymbolSequence& y_;
    const FieldCtx& ctx_;
    PolyMatrix g_reduced_;
    int deg_adj_;
    std::vector<FieldMatrix> adj_coeffs_;
    int k_;
    std::map<long, std::vector<FieldElement>> q_cache_;
};

void check_y_dim(const DecoderPlan& plan, int dim) {
    if (dim != plan.eq.G.rows())
        throw DimensionError("output sequence dimension " + std::to_string(dim) +
                             " does not match the equation's " + std::to_string(plan.eq.G.rows()));
}

}  // namespace

SymbolSequence decode_stream(const DecoderPlan& plan, const SymbolSequence& y, long upto) {
    check_y_dim(plan, y.dim());
    if (y.defined_until() < upto)
        throw NeedsMoreSymbolsError("y only reaches time " + std::to_string(y.defined_until()) +
                                    ", requested decoding up to " + std::to_string(upto));
    const int m = plan.eq.G.cols();
    SymbolSequence u(plan.ctx(), m, 0);
    const long n_last = upto - plan.delay;
    if (n_last < 0) return u;

    DecodeCore core(plan, y);
    std::vector<std::vector<FieldElement>> history;
    history.reserve(static_cast<size_t>(n_last + 1));
    for (long n = 0; n <= n_last; ++n) history.push_back(core.next(n, history));
    for (auto& v : history) u.append(std::move(v));
    return u;
}

StreamDecoder::StreamDecoder(DecoderPlan plan, long y_start_time)
    : plan_(std::move(plan)), y_(plan_.ctx(), plan_.eq.G.rows(), y_start_time) {}

std::optional<std::vector<FieldElement>> StreamDecoder::try_next() {
    // A fresh core per attempt keeps no stale cache; the cached q values are
    // cheap to rebuild at desk scale and correctness stays self-evident.
    DecodeCore core(plan_, y_);
    try {
        auto u = core.next(next_, history_);
        history_.push_back(u);
        ++next_;
        return u;
    } catch (const NeedsMoreSymbolsError&) {
        return std::nullopt;
    }
}

std::optional<std::vector<FieldElement>> StreamDecoder::push(std::vector<FieldElement> y_n) {
    check_y_dim(plan_, static_cast<int>(y_n.size()));
    y_.append(std::move(y_n));
    return try_next();
}

std::optional<std::vector<FieldElement>> StreamDecoder::push_values(
    const std::vector<uint16_t>& y_n) {
    std::vector<FieldElement> v;
    v.reserve(y_n.size());
    for (uint16_t x : y_n) v.push_back(plan_.ctx().make(x));
    return push(std::move(v));
}

std::vector<std::vector<FieldElement>> StreamDecoder::drain() {
    std::vector<std::vector<FieldElement>> out;
    while (auto u = try_next()) out.push_back(std::move(*u));
    return out;
}

namespace {

using nlohmann::json;

}  // namespace

std::string plan_to_json(const DecoderPlan& plan) {
    json j;
    j["format"] = "cnc-plan";
    j["field"] = plan.ctx().to_string();
    j["sink"] = plan.eq.sink;
    j["N"] = plan.eq.N;
    j["alg"] = plan.eq.algorithm;
    j["P"] = plan.eq.P.to_string();
    j["G"] = plan.eq.G.to_string();
    j["retained_rows"] = plan.retained_rows;
    j["adjG"] = plan.adj_g.to_string();
    j["f"] = plan.f.to_string();
    j["delay"] = plan.delay;
    json prefix = json::array();
    for (long n = 0; n <= plan.known_prefix.defined_until(); ++n) {
        json row = json::array();
        for (const auto& e : plan.known_prefix.at(n)) row.push_back(e.value());
        prefix.push_back(row);
    }
    j["known_prefix"] = prefix;
    return j.dump(2) + "\n";
}

DecoderPlan parse_plan(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("plan is not valid JSON: ") + e.what());
    }
    try {
        if (j.value("format", "") != "cnc-plan") throw ParseError("not a cnc-plan file");
        const FieldCtx& ctx = FieldCtx::parse(j.at("field").get<std::string>());
        DifferenceEquation eq{j.at("sink").get<std::string>(),
                              Poly::parse(ctx, j.at("P").get<std::string>()),
                              PolyMatrix::parse(ctx, j.at("G").get<std::string>()),
                              j.at("N").get<int>(), j.at("alg").get<int>()};
        SymbolSequence prefix(ctx, eq.G.cols(), 0);
        for (const auto& row : j.at("known_prefix"))
            prefix.append_values(row.get<std::vector<uint16_t>>());
        DecoderPlan plan = build_plan(eq, std::move(prefix));
        // Sanity: the stored derived fields must match what we rebuilt.
        if (plan.f.to_string() != j.at("f").get<std::string>() ||
            plan.delay != j.at("delay").get<int>())
            throw ParseError("plan file derived fields are inconsistent with its equation");
        return plan;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed plan: ") + e.what());
    }
}

DecoderPlan read_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open plan file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_plan(buf.str());
}

void write_plan_file(const DecoderPlan& plan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write plan file '" + path + "'");
    out << plan_to_json(plan);
}

}  // namespace cnc
