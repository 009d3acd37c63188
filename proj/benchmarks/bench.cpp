#include <benchmark/benchmark.h>

#include "ncg/kahler.hpp"

namespace {

std::shared_ptr<ncg::SpectralTriple> three_point() {
    return std::make_shared<ncg::SpectralTriple>(
        ncg::GraphTripleSpec::builtin("three-point"));
}

void bm_calculus_construction(benchmark::State& state) {
    auto triple = three_point();
    for (auto _ : state) {
        ncg::DifferentialCalculus calc(triple, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(calc.dim(1));
    }
}
BENCHMARK(bm_calculus_construction)->Arg(1)->Arg(2)->Arg(3);

void bm_solve_acs(benchmark::State& state) {
    ncg::DifferentialCalculus calc(three_point(), 3);
    for (auto _ : state) {
        auto res = ncg::solve_acs(calc);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(bm_solve_acs);

void bm_extend_and_pq(benchmark::State& state) {
    ncg::DifferentialCalculus calc(three_point(), 3);
    auto sols = std::get<std::vector<ncg::AcsMatrix>>(ncg::solve_acs(calc));
    for (auto _ : state) {
        auto pq = ncg::extend_and_pq(calc, sols[0], 3);
        benchmark::DoNotOptimize(pq);
    }
}
BENCHMARK(bm_extend_and_pq);

void bm_kahler_certificate(benchmark::State& state) {
    ncg::DifferentialCalculus calc(three_point(), 3);
    auto sols = std::get<std::vector<ncg::AcsMatrix>>(ncg::solve_acs(calc));
    auto pq = ncg::extend_and_pq(calc, sols[0], 3);
    for (auto _ : state) {
        auto outcome = ncg::kahler_search_certificate(calc, sols[0], pq);
        benchmark::DoNotOptimize(outcome);
    }
}
BENCHMARK(bm_kahler_certificate);

void bm_verify_certificate(benchmark::State& state) {
    ncg::DifferentialCalculus calc(three_point(), 3);
    auto sols = std::get<std::vector<ncg::AcsMatrix>>(ncg::solve_acs(calc));
    auto pq = ncg::extend_and_pq(calc, sols[0], 3);
    auto cert = std::get<ncg::NoKahlerCertificate>(
        ncg::kahler_search_certificate(calc, sols[0], pq));
    std::string text = ncg::certificate_to_json(cert, *calc.triple().spec());
    for (auto _ : state) {
        auto v = ncg::verify_certificate_json(text);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bm_verify_certificate);

}  // namespace

BENCHMARK_MAIN();
