#include <benchmark/benchmark.h>

#include <vector>

#include "gcinf/catalog.hpp"
#include "gcinf/duality.hpp"
#include "gcinf/expr.hpp"
#include "gcinf/geometry.hpp"
#include "gcinf/spec_document.hpp"
#include "gcinf/transform.hpp"

using namespace gcinf;

static void BM_JetMultiply(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  auto x = coordinate_jets(p, order);
  const Jet a = exp(x[0] + x[1]);
  const Jet b = sin(x[2] * x[3]);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->DenseRange(2, 5);

static void BM_Riemann(benchmark::State& state) {
  const auto spec = load_spec(catalog_document(state.range(0) == 3 ? "polynomial-3" : "non-lcf-4a"));
  const auto p = spec.doc.box.center();
  const DerivEngine engine(state.range(1) ? EngineMode::central_differences : EngineMode::forward_jets);
  for (auto _ : state) benchmark::DoNotOptimize(riemann(*spec.metric, p, engine));
}
BENCHMARK(BM_Riemann)->Args({3, 0})->Args({3, 1})->Args({4, 0})->Args({4, 1});

static void BM_GcResidual(benchmark::State& state) {
  const auto spec = load_spec(catalog_document("graph-3"));
  const auto p = spec.doc.box.center();
  const DerivEngine engine;
  for (auto _ : state) benchmark::DoNotOptimize(gc_residual(*spec.pair, p, engine));
}
BENCHMARK(BM_GcResidual);

static void BM_ParseSpec(benchmark::State& state) {
  const std::string text = write_spec(catalog_document("geodesic-sphere-3-r1"));
  for (auto _ : state) benchmark::DoNotOptimize(parse_spec(text));
}
BENCHMARK(BM_ParseSpec);

static void BM_ParseExpr(benchmark::State& state) {
  const std::string text = "sinh(1)*(1-(x1^2+x2^2+x3^2))/(1+x1^2+x2^2+x3^2) + exp(-2*x1)*cos(x2*x3)";
  for (auto _ : state) benchmark::DoNotOptimize(parse_expr(text, 3));
}
BENCHMARK(BM_ParseExpr);

BENCHMARK_MAIN();
