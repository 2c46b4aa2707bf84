// Microbenchmarks for the hot paths: Kronecker symbols, closed-form Gauss
// sums, coefficient sieving, NTT transforms, and V-kernel evaluation.

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "gl3twist/archimedean.hpp"
#include "gl3twist/arith.hpp"
#include "gl3twist/form.hpp"
#include "gl3twist/moments.hpp"
#include "gl3twist/ntt.hpp"

namespace {

void BM_Kronecker(benchmark::State& state) {
  long long a = 8 * 977, n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl3::kronecker(a, n));
    n += 2;
    if (n > 2000000) n = 1;
  }
}
BENCHMARK(BM_Kronecker);

void BM_GaussClosedForm(benchmark::State& state) {
  long long k = 0, n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gl3::gauss_G(k, n).value());
    n += 2;
    k += 1;
    if (n > 99991) n = 1;
  }
}
BENCHMARK(BM_GaussClosedForm);

void BM_CoeffTable(benchmark::State& state) {
  gl3::Gl3Form f = gl3::d3_form();
  const long long N = state.range(0);
  for (auto _ : state) {
    gl3::CoeffTable t = gl3::coeff_table(f, N);
    benchmark::DoNotOptimize(t.a.data());
  }
  state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_CoeffTable)->Arg(1 << 16)->Arg(1 << 20);

void BM_NttTransform(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  std::vector<uint64_t> primes = gl3::ntt::find_ntt_primes(1, 24);
  gl3::ntt::MontgomeryNtt ntt(primes[0]);
  std::vector<uint64_t> a(n);
  for (size_t i = 0; i < n; ++i) a[i] = i * 2654435761u % primes[0];
  for (auto _ : state) {
    ntt.forward(a);
    ntt.inverse(a);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * n * 2);
}
BENCHMARK(BM_NttTransform)->Arg(1 << 14)->Arg(1 << 18);

void BM_VKernelCacheEval(benchmark::State& state) {
  gl3::Gl3Form f = gl3::d3_form();
  gl3::VCache cache(f, 1e-5, 20.0);
  double y = 1e-5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cache.real_at(y));
    y *= 1.0000103;
    if (y > 19.0) y = 1e-5;
  }
}
BENCHMARK(BM_VKernelCacheEval);

void BM_CentralValueD3(benchmark::State& state) {
  gl3::Gl3Form f = gl3::d3_form();
  gl3::CentralValueEngine engine(f, 29.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.value(29));
  }
}
BENCHMARK(BM_CentralValueD3);

}  // namespace

BENCHMARK_MAIN();
