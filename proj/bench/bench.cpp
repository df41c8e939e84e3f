// Serial reference vs optimized kernels, serial and OpenMP.
#include <random>

#include <benchmark/benchmark.h>

#include "hm/catalog.hpp"
#include "hm/hochschild.hpp"
#include "hm/linalg.hpp"

using namespace hm;

namespace {

Mat random_mat(const FieldSpec& f, std::size_t r, std::size_t c, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<long> v(r * c);
    for (auto& x : v) x = static_cast<long>(rng() % 19) - 9;
    return Mat::from_ints(f, r, c, v);
}

const FieldSpec kP = FieldSpec::prime(kDefaultPrime);
const FieldSpec kQ = FieldSpec::rationals();

const FieldSpec& field_arg(const benchmark::State& s) { return s.range(1) == 0 ? kP : kQ; }

void BM_rref_reference(benchmark::State& s)
{
    const Mat m = random_mat(field_arg(s), s.range(0), s.range(0), 7);
    for (auto _ : s) benchmark::DoNotOptimize(la::reference::rref(m));
}

void BM_rref_serial(benchmark::State& s)
{
    const Mat m = random_mat(field_arg(s), s.range(0), s.range(0), 7);
    for (auto _ : s) benchmark::DoNotOptimize(la::rref(m, Exec::Serial));
}

void BM_rref_parallel(benchmark::State& s)
{
    const Mat m = random_mat(field_arg(s), s.range(0), s.range(0), 7);
    for (auto _ : s) benchmark::DoNotOptimize(la::rref(m, Exec::Parallel));
}

void BM_multiply_reference(benchmark::State& s)
{
    const Mat a = random_mat(field_arg(s), s.range(0), s.range(0), 1);
    const Mat b = random_mat(field_arg(s), s.range(0), s.range(0), 2);
    for (auto _ : s) benchmark::DoNotOptimize(la::reference::multiply(a, b));
}

void BM_multiply_serial(benchmark::State& s)
{
    const Mat a = random_mat(field_arg(s), s.range(0), s.range(0), 1);
    const Mat b = random_mat(field_arg(s), s.range(0), s.range(0), 2);
    for (auto _ : s) benchmark::DoNotOptimize(multiply(a, b, Exec::Serial));
}

void BM_multiply_parallel(benchmark::State& s)
{
    const Mat a = random_mat(field_arg(s), s.range(0), s.range(0), 1);
    const Mat b = random_mat(field_arg(s), s.range(0), s.range(0), 2);
    for (auto _ : s) benchmark::DoNotOptimize(multiply(a, b, Exec::Parallel));
}

void cochains(benchmark::State& s, Exec exec)
{
    const auto c = catalog::truncated_polynomial(kP, 3);
    const auto reg = regular_bimodule(c, enveloping(c));
    for (auto _ : s) benchmark::DoNotOptimize(hochschild_cochain_complex(c, reg, s.range(0), exec));
}

void BM_cochains_serial(benchmark::State& s) { cochains(s, Exec::Serial); }
void BM_cochains_parallel(benchmark::State& s) { cochains(s, Exec::Parallel); }

void BM_cohomology_serial(benchmark::State& s)
{
    const auto c = catalog::kronecker(kP, 3);
    for (auto _ : s) benchmark::DoNotOptimize(hochschild_cohomology(c, s.range(0), Exec::Serial));
}

void BM_cohomology_parallel(benchmark::State& s)
{
    const auto c = catalog::kronecker(kP, 3);
    for (auto _ : s) benchmark::DoNotOptimize(hochschild_cohomology(c, s.range(0), Exec::Parallel));
}

}  // namespace

// second argument: 0 = GF(32003), 1 = Q
BENCHMARK(BM_rref_reference)->ArgsProduct({{32, 96}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_serial)->ArgsProduct({{32, 96, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_parallel)->ArgsProduct({{32, 96, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_reference)->ArgsProduct({{32, 96}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_serial)->ArgsProduct({{32, 96, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_parallel)->ArgsProduct({{32, 96, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cochains_serial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cochains_parallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cohomology_serial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cohomology_parallel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
