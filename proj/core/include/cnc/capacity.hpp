#ifndef CNC_CAPACITY_HPP
#define CNC_CAPACITY_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cnc/polymat.hpp"

namespace cnc {

// Exhaustive column-subset search is combinatorial; refuse absurd widths.
inline constexpr int kMaxCapacityInputs = 12;

/// Splits a transfer matrix into per-source column blocks (contiguous, in
/// source order); concatenating the blocks reproduces the matrix.
std::vector<PolyMatrix> split_by_source(const PolyMatrix& g, const std::vector<int>& rates);

/// True iff for every source one can pick tuple[s] columns of its block such
/// that the union across sources is linearly independent over F[z].
bool tuple_achievable(const std::vector<PolyMatrix>& blocks, const std::vector<int>& tuple);

/// Achievable rate tuples, per sink and intersected across sinks.
struct RateRegion {
    std::vector<std::string> sources;
    std::vector<int> full_rates;
    std::map<std::string, std::set<std::vector<int>>> per_sink;
    std::set<std::vector<int>> achievable;  // intersection over sinks

    /// Tuples not coordinatewise dominated by another achievable tuple.
    std::vector<std::vector<int>> maximal() const;
};

/// Tests every integer tuple with 0 <= tuple[s] <= rates[s] against every
/// sink's blocks. The result is downward closed by construction of the
/// independence condition; enumerate_region double-checks that.
RateRegion enumerate_region(
    const std::vector<std::pair<std::string, std::vector<PolyMatrix>>>& per_sink_blocks,
    const std::vector<std::string>& sources, const std::vector<int>& rates);

}  // namespace cnc

#endif
