#include <benchmark/benchmark.h>

#include <random>

#include "cnc/linalg.hpp"
#include "cnc/polymat.hpp"

using namespace cnc;

namespace {

const FieldCtx& ctx() { return FieldCtx::parse("gf2^8:0x11D"); }

FieldMatrix random_matrix(int rows, int cols, uint64_t seed) {
    std::mt19937_64 g(seed);
    FieldMatrix m(ctx(), rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = ctx().make(g() & 0xFF);
    return m;
}

PolyMatrix random_poly_matrix(int n, int deg, uint64_t seed) {
    std::mt19937_64 g(seed);
    PolyMatrix m(ctx(), n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<uint16_t> c(static_cast<size_t>(deg) + 1);
            for (auto& v : c) v = static_cast<uint16_t>(g() & 0xFF);
            m(i, j) = Poly(ctx(), c);
        }
    return m;
}

void BM_FieldMulTable(benchmark::State& state) {
    const auto& f = ctx();
    uint16_t a = 57, b = 113;
    for (auto _ : state) {
        benchmark::DoNotOptimize(a = f.mul(a, b));
        b ^= 1;
    }
}
BENCHMARK(BM_FieldMulTable);

void BM_FieldMulShiftReduce(benchmark::State& state) {
    const auto& f = ctx();
    uint16_t a = 57, b = 113;
    for (auto _ : state) {
        benchmark::DoNotOptimize(a = f.mul_shift_reduce(a, b));
        b ^= 1;
    }
}
BENCHMARK(BM_FieldMulShiftReduce);

void BM_Nullspace(benchmark::State& state) {
    const auto m = random_matrix(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)) / 2, 17);
    for (auto _ : state) benchmark::DoNotOptimize(nullspace(m));
}
BENCHMARK(BM_Nullspace)->Arg(16)->Arg(48);

void BM_CharPoly(benchmark::State& state) {
    const auto m = random_matrix(static_cast<int>(state.range(0)),
                                 static_cast<int>(state.range(0)), 23);
    for (auto _ : state) benchmark::DoNotOptimize(char_poly(m));
}
BENCHMARK(BM_CharPoly)->Arg(4)->Arg(8);

void BM_PolyMatrixDet(benchmark::State& state) {
    const auto m = random_poly_matrix(static_cast<int>(state.range(0)), 3, 29);
    for (auto _ : state) benchmark::DoNotOptimize(det(m));
}
BENCHMARK(BM_PolyMatrixDet)->Arg(2)->Arg(4);

void BM_Adjugate(benchmark::State& state) {
    const auto m = random_poly_matrix(static_cast<int>(state.range(0)), 3, 31);
    for (auto _ : state) benchmark::DoNotOptimize(adjugate(m));
}
BENCHMARK(BM_Adjugate)->Arg(2)->Arg(4);

}  // namespace
