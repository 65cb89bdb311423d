// Serial reference vs OpenMP path for the hot kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include <random>

#include "su11/kernels.hpp"
#include "su11/normext.hpp"
#include "su11/parallel.hpp"
#include "su11/povm.hpp"

using namespace su11;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_Gram(benchmark::State& st)
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N01;
    CoeffTable V(64, 20000);
    for (Eigen::Index i = 0; i < V.size(); ++i)
        V.data()[i] = cplx(N01(rng), N01(rng));
    for (auto _ : st)
        benchmark::DoNotOptimize(gram(V, exec_of(st)));
}

void BM_Moments(benchmark::State& st)
{
    DiskDensity d(2.0, State::basis_vector(16, 3));
    for (auto _ : st)
        benchmark::DoNotOptimize(mean_and_second_moment(d, QuadSpec{800, 128, 0.9999}, exec_of(st)));
}

void BM_Sample(benchmark::State& st)
{
    DiskDensity d(2.0, State::basis_vector(8, 1));
    for (auto _ : st)
        benchmark::DoNotOptimize(sample(d, 100000, 42, 0.9999, exec_of(st)));
}

void BM_ApplyTprime(benchmark::State& st)
{
    Grid2DSpec s;
    Field2D F{s.Nu, s.Nv, std::vector<cplx>(static_cast<std::size_t>(s.Nu) * s.Nv, cplx(1.0, 0.5)),
              std::vector<cplx>(static_cast<std::size_t>(s.Nu) * s.Nv, cplx(-0.5, 1.0))};
    for (auto _ : st)
        benchmark::DoNotOptimize(apply_tprime(F, s, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_Gram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Moments)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyTprime)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv)
{
    configure_threads();
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
}
