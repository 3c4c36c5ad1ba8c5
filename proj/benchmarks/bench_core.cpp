#include <benchmark/benchmark.h>

#include "berkcrucial/crucial.hpp"
#include "berkcrucial/roots.hpp"

using namespace berk;

namespace {

RationalMapRep sample_map(long p, int d) {
  TowerContext ctx{p, 1};
  std::vector<QQ> nc(d + 1, QQ(0)), dc(d + 1, QQ(0));
  nc[d] = 1;
  nc[0] = QQ(1, p);
  dc[1] = 1;
  dc[0] = QQ(p);
  return RationalMapRep::from_polys(Poly::from_rationals(ctx, nc),
                                    Poly::from_rationals(ctx, dc));
}

void BM_resultant(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  RationalMapRep f = sample_map(5, d);
  for (auto _ : state) benchmark::DoNotOptimize(resultant(f.lift()));
}
BENCHMARK(BM_resultant)->Arg(2)->Arg(4)->Arg(8);

void BM_padic_roots(benchmark::State& state) {
  TowerContext ctx{5, 1};
  // (z^2 - z + 1/5)(z^2 - 1): ramified clusters plus exact unit roots
  Poly P = Poly::from_rationals(
      ctx, {QQ(-1, 5), QQ(1), QQ(-4, 5), QQ(-1), QQ(1)});
  for (auto _ : state) benchmark::DoNotOptimize(padic_roots(P));
}
BENCHMARK(BM_padic_roots);

void BM_crucial_at(benchmark::State& state) {
  RationalMapRep f = sample_map(5, 3);
  BerkPoint S = BerkPoint::type2(TowerElem(TowerContext{5, 1}, QQ(2)), QQ(3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(crucial_at(f, S));
}
BENCHMARK(BM_crucial_at);

void BM_ordres_direct(benchmark::State& state) {
  RationalMapRep f = sample_map(5, 3);
  BerkPoint S = BerkPoint::type2(TowerElem(TowerContext{5, 1}, QQ(2)), QQ(3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ordres_direct(f, S));
}
BENCHMARK(BM_ordres_direct);

void BM_minresloc(benchmark::State& state) {
  RationalMapRep f = sample_map(5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(minresloc(f));
}
BENCHMARK(BM_minresloc);

}  // namespace

BENCHMARK_MAIN();
