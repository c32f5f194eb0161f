// Serial reference kernels against their OpenMP counterparts on shell-sized rows.
// Pass --benchmark_filter=... to narrow; thread count follows NLS_THREADS.

#include <benchmark/benchmark.h>

#include <cstdlib>
#include <random>

#include "nls/coeff_solver.hpp"
#include "nls/kernels.hpp"
#include "nls/verifier.hpp"

using namespace nls;
using cd = std::complex<double>;

namespace {

void apply_env_threads() {
  const char* env = std::getenv("NLS_THREADS");
  kernels::set_threads(env ? std::atoi(env) : 0);
}

// Rows shaped like shell n of c: the square term pairs rows m and n - m.
template <class T, class Make>
std::vector<std::vector<T>> shell_rows(int n, Make&& make) {
  std::vector<std::vector<T>> rows(n);
  for (int m = 1; m < n; ++m) {
    rows[m].resize(ShellTable<T>::row_len(m));
    for (auto& v : rows[m]) v = make();
  }
  return rows;
}

template <class T>
std::vector<kernels::ConvTerm<T>> square_terms(const std::vector<std::vector<T>>& rows, int n) {
  std::vector<kernels::ConvTerm<T>> terms;
  for (int m = 1; 2 * m <= n; ++m) terms.push_back({rows[m], rows[n - m], 2 * m == n ? 1 : 2});
  return terms;
}

template <class T, bool Parallel, class Make>
void run_conv(benchmark::State& state, Make&& make) {
  apply_env_threads();
  const int n = static_cast<int>(state.range(0));
  const auto rows = shell_rows<T>(n, make);
  const auto terms = square_terms(rows, n);
  std::vector<T> out(detail::power_row_len(n, 2));
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), ScalarTraits<T>::zero());
    if constexpr (Parallel)
      kernels::shell_conv<T>(terms, out);
    else
      kernels::shell_conv_reference<T>(terms, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["threads"] = kernels::threads();
}

std::mt19937_64 rng(7);
cd random_cd() { return {std::uniform_real_distribution<double>(-1, 1)(rng), std::uniform_real_distribution<double>(-1, 1)(rng)}; }
ComplexInterval random_civ() {
  const cd z = random_cd();
  return {Interval(z.real(), z.real() + 1e-14), Interval(z.imag(), z.imag() + 1e-14)};
}

void BM_conv_f64_serial(benchmark::State& s) { run_conv<cd, false>(s, random_cd); }
void BM_conv_f64_omp(benchmark::State& s) { run_conv<cd, true>(s, random_cd); }
void BM_conv_interval_serial(benchmark::State& s) { run_conv<ComplexInterval, false>(s, random_civ); }
void BM_conv_interval_omp(benchmark::State& s) { run_conv<ComplexInterval, true>(s, random_civ); }

template <bool Parallel>
void run_midrad(benchmark::State& state) {
  apply_env_threads();
  const int n = static_cast<int>(state.range(0));
  std::vector<kernels::MidRadRow> rows(n);
  for (int m = 1; m < n; ++m)
    for (std::size_t i = 0; i < ShellTable<double>::row_len(m); ++i) {
      rows[m].mid.push_back(std::uniform_real_distribution<double>(-1, 1)(rng));
      rows[m].rad.push_back(1e-15);
    }
  std::vector<kernels::MidRadTerm> terms;
  for (int m = 1; 2 * m <= n; ++m) terms.push_back({&rows[m], &rows[n - m], 2 * m == n ? 1 : 2});
  kernels::MidRadSums out;
  for (auto _ : state) {
    out.resize(detail::power_row_len(n, 2));
    if constexpr (Parallel)
      kernels::midrad_conv(terms, out);
    else
      kernels::midrad_conv_reference(terms, out);
    benchmark::DoNotOptimize(out.mid.data());
  }
  state.counters["threads"] = kernels::threads();
}

void BM_midrad_serial(benchmark::State& s) { run_midrad<false>(s); }
void BM_midrad_omp(benchmark::State& s) { run_midrad<true>(s); }

template <bool Parallel>
void run_enclosure(benchmark::State& state) {
  apply_env_threads();
  for (auto _ : state) benchmark::DoNotOptimize(enclose_ctilde(static_cast<int>(state.range(0)), Parallel));
}

void BM_enclose_serial(benchmark::State& s) { run_enclosure<false>(s); }
void BM_enclose_omp(benchmark::State& s) { run_enclosure<true>(s); }

}  // namespace

BENCHMARK(BM_conv_f64_serial)->Arg(60)->Arg(110)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_conv_f64_omp)->Arg(60)->Arg(110)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_conv_interval_serial)->Arg(60)->Arg(110)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_conv_interval_omp)->Arg(60)->Arg(110)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_midrad_serial)->Arg(110)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_midrad_omp)->Arg(110)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enclose_serial)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enclose_omp)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
