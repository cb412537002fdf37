#include <benchmark/benchmark.h>

#include "covercrimp/cover.hpp"
#include "covercrimp/crimp.hpp"
#include "covercrimp/monodromy.hpp"
#include "covercrimp/series.hpp"

using namespace covercrimp;

namespace {

TruncatedSeries geometric(const Field& f, std::size_t N) {
  std::vector<Scalar> coeffs;
  for (std::size_t i = 0; i < N; ++i) coeffs.push_back(Scalar::from_integer(1, f));
  return TruncatedSeries::from_coefficients(coeffs, f, N);
}

void BM_SeriesMultiply(benchmark::State& state) {
  const Field f = Field::prime(7);
  const std::size_t N = static_cast<std::size_t>(state.range(0));
  TruncatedSeries a = geometric(f, N);
  TruncatedSeries b = a * a;
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_SeriesMultiply)->Arg(32)->Arg(256);

void BM_MatrixDet(benchmark::State& state) {
  const Field f = Field::prime(7);
  const std::size_t n = static_cast<std::size_t>(state.range(0)), N = 24;
  SeriesMatrix m(n, n, f, N);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m.set(i, j, TruncatedSeries::monomial(Scalar::from_integer(1 + static_cast<long>(i + j), f),
                                            (i + j) % 3, N));
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.det());
  }
}
BENCHMARK(BM_MatrixDet)->Arg(4)->Arg(8);

void BM_Discriminant(benchmark::State& state) {
  const Field f = Field::prime(7);
  const std::size_t N = 16;
  DiskCover c = from_branches({TruncatedSeries::zero(f, N),
                               TruncatedSeries::monomial(Scalar::from_integer(1, f), 1, N),
                               TruncatedSeries::monomial(Scalar::from_integer(3, f), 1, N)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(discriminant(c));
  }
}
BENCHMARK(BM_Discriminant);

void BM_CrimpEnumeration(benchmark::State& state) {
  const Field f = Field::prime(3);
  CrimpProblem p(NormalizationData::split(3, f, 13), 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_crimps(p));
  }
}
BENCHMARK(BM_CrimpEnumeration);

void BM_HurwitzCount(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hurwitz_count(4, 0, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_HurwitzCount)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
