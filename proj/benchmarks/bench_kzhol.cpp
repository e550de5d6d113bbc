#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "kzhol/associator.hpp"
#include "kzhol/dk_algebra.hpp"
#include "kzhol/holonomy.hpp"
#include "kzhol/json_io.hpp"
#include "kzhol/verifier.hpp"

using namespace kzhol;

namespace {

PathSpec fixture(const std::string& name) {
    return path_from_json(read_json_file(std::string(KZHOL_TEST_DATA_DIR) + "/" + name + ".json"));
}

Series random_series(const CataloguePtr& g, int D) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    Series s(g, D);
    for (int d = 0; d <= D; ++d)
        for (auto& c : s.part(d)) c = {n(rng), n(rng)};
    return s;
}

void BM_SeriesMultiply(benchmark::State& state) {
    const auto alg = DKAlgebra::with_two_moving_points(2);  // 6 generators
    const int D = static_cast<int>(state.range(0));
    const auto a = random_series(alg.catalogue(), D), b = random_series(alg.catalogue(), D);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMultiply)->DenseRange(2, 5);

void BM_IdealBasis(benchmark::State& state) {
    const auto alg = DKAlgebra::with_two_moving_points(2);
    const int D = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ideal_basis(alg, D));
}
BENCHMARK(BM_IdealBasis)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Holonomy(benchmark::State& state) {
    const auto spec = fixture("winding");
    const auto conn = ConnectionSpec::standard(spec.punctures);
    EngineConfig cfg;
    cfg.degree = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hol_reg(conn, spec, cfg));
}
BENCHMARK(BM_Holonomy)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Associator(benchmark::State& state) {
    EngineConfig cfg;
    cfg.degree = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(compute_associator(cfg));
}
BENCHMARK(BM_Associator)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_VerifySeries(benchmark::State& state) {
    const auto spec = fixture(state.range(0) == 1 ? "figure_eight" : "double_kink");
    VerifyConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(verify_pentagon(spec, cfg));
}
BENCHMARK(BM_VerifySeries)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_VerifyMatrix(benchmark::State& state) {
    const auto spec = fixture("figure_eight");
    VerifyConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(verify_pentagon_matrix(spec, 2, cfg));
}
BENCHMARK(BM_VerifyMatrix)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
