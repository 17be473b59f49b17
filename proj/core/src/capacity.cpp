#include "cnc/capacity.hpp"

#include <algorithm>
#include <numeric>

namespace cnc {

std::vector<PolyMatrix> split_by_source(const PolyMatrix& g, const std::vector<int>& rates) {
    const int total = std::accumulate(rates.begin(), rates.end(), 0);
    if (total != g.cols())
        throw DimensionError("source rates sum to " + std::to_string(total) + " but G has " +
                             std::to_string(g.cols()) + " columns");
    std::vector<PolyMatrix> blocks;
    int base = 0;
    for (int r : rates) {
        if (r < 0) throw DimensionError("negative source rate");
        std::vector<int> cols(static_cast<size_t>(r));
        std::iota(cols.begin(), cols.end(), base);
        blocks.push_back(g.select_cols(cols));
        base += r;
    }
    return blocks;
}

namespace {

// Walks every way of picking tuple[s] columns from each block, pruning a
// block whose own rank is already too small, and tests the union.
bool search(const std::vector<PolyMatrix>& blocks, const std::vector<int>& tuple, size_t s,
            std::vector<std::vector<Poly>>& chosen) {
    if (s == blocks.size()) return columns_independent(chosen);
    const PolyMatrix& block = blocks[s];
    const int want = tuple[s];
    if (want == 0) return search(blocks, tuple, s + 1, chosen);
    if (rank_over_ring(block) < want) return false;

    std::vector<int> idx(static_cast<size_t>(want));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        for (int i : idx) chosen.push_back(block.column(i));
        if (search(blocks, tuple, s + 1, chosen)) return true;
        for (int k = 0; k < want; ++k) chosen.pop_back();

        // next combination
        int i = want - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == block.cols() - want + i) --i;
        if (i < 0) return false;
        ++idx[static_cast<size_t>(i)];
        for (int k = i + 1; k < want; ++k)
            idx[static_cast<size_t>(k)] = idx[static_cast<size_t>(k - 1)] + 1;
    }
}

}  // namespace

bool tuple_achievable(const std::vector<PolyMatrix>& blocks, const std::vector<int>& tuple) {
    if (blocks.size() != tuple.size())
        throw DimensionError("tuple length does not match the number of sources");
    int total = 0;
    for (size_t s = 0; s < blocks.size(); ++s) {
        if (tuple[s] < 0 || tuple[s] > blocks[s].cols())
            throw DimensionError("tuple entry exceeds the source's transmission rate");
        total += blocks[s].cols();
    }
    if (total > kMaxCapacityInputs)
        throw LimitError("capacity enumeration limited to " +
                         std::to_string(kMaxCapacityInputs) + " total inputs, got " +
                         std::to_string(total));
    std::vector<std::vector<Poly>> chosen;
    return search(blocks, tuple, 0, chosen);
}

std::vector<std::vector<int>> RateRegion::maximal() const {
    std::vector<std::vector<int>> out;
    for (const auto& t : achievable) {
        bool dominated = false;
        for (const auto& o : achievable) {
            if (o == t) continue;
            bool ge = true;
            for (size_t i = 0; i < t.size(); ++i)
                if (o[i] < t[i]) {
                    ge = false;
                    break;
                }
            if (ge) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(t);
    }
    return out;
}

RateRegion enumerate_region(
    const std::vector<std::pair<std::string, std::vector<PolyMatrix>>>& per_sink_blocks,
    const std::vector<std::string>& sources, const std::vector<int>& rates) {
    RateRegion region;
    region.sources = sources;
    region.full_rates = rates;

    std::vector<std::vector<int>> tuples;
    std::vector<int> t(rates.size(), 0);
    for (;;) {
        tuples.push_back(t);
        size_t i = 0;
        while (i < t.size() && t[i] == rates[i]) t[i++] = 0;
        if (i == t.size()) break;
        ++t[i];
    }

    bool first = true;
    for (const auto& [sink, blocks] : per_sink_blocks) {
        auto& set = region.per_sink[sink];
        for (const auto& tuple : tuples)
            if (tuple_achievable(blocks, tuple)) set.insert(tuple);
        if (first) {
            region.achievable = set;
            first = false;
        } else {
            std::set<std::vector<int>> inter;
            std::set_intersection(region.achievable.begin(), region.achievable.end(), set.begin(),
                                  set.end(), std::inserter(inter, inter.begin()));
            region.achievable = std::move(inter);
        }
    }
    if (per_sink_blocks.empty()) region.achievable.insert(std::vector<int>(rates.size(), 0));

    // The subset condition is monotone, so the region must be downward closed.
    for (const auto& tuple : region.achievable)
        for (size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i] == 0) continue;
            auto smaller = tuple;
            --smaller[i];
            if (!region.achievable.count(smaller))
                throw Error("internal: rate region is not downward closed");
        }
    return region;
}

}  // namespace cnc
