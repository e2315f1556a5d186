// Microbenchmarks for the kernels that dominate training time. Items
// processed are flops where that makes sense, so the reported rate reads as
// flops/s directly.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "elm/dataset.hpp"
#include "elm/dense_matrix.hpp"
#include "elm/gram.hpp"
#include "elm/model.hpp"
#include "elm/ridge.hpp"
#include "elm/rng.hpp"
#include "elm/shapers.hpp"

namespace {

elm::DenseMatrix random_matrix(elm::Index rows, elm::Index cols, std::uint64_t seed) {
  elm::Rng rng(seed);
  elm::DenseMatrix m(rows, cols);
  for (elm::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.real01() - 0.5;
  return m;
}

elm::LabeledDataset random_dataset(elm::Index l, elm::Index k, int n_classes,
                                   std::uint64_t seed) {
  elm::LabeledDataset ds;
  ds.x = random_matrix(l, k, seed);
  for (elm::Index i = 0; i < ds.x.size(); ++i) ds.x.data()[i] += 0.5;
  ds.labels.resize(static_cast<std::size_t>(k));
  for (elm::Index j = 0; j < k; ++j)
    ds.labels[static_cast<std::size_t>(j)] = static_cast<int>(j % n_classes);
  ds.n_classes = n_classes;
  const int side = static_cast<int>(std::sqrt(static_cast<double>(l)));
  ds.geometry = {side, side, 1};
  return ds;
}

void BM_matmul(benchmark::State& state) {
  const elm::Index n = state.range(0);
  elm::DenseMatrix a = random_matrix(n, n, 1);
  elm::DenseMatrix b = random_matrix(n, n, 2);
  for (auto _ : state) {
    elm::DenseMatrix c = elm::matmul(a, b);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * 2 * n * n * n);
}
BENCHMARK(BM_matmul)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_gram_fold(benchmark::State& state) {
  const elm::Index m = state.range(0);
  const elm::Index batch = 2048;
  elm::DenseMatrix a = random_matrix(m, batch, 3);
  elm::DenseMatrix y = random_matrix(10, batch, 4);
  elm::GramAccumulator acc(m, 10);
  for (auto _ : state) {
    acc.fold(a, y);
    benchmark::DoNotOptimize(acc.gram().data());
  }
  // syrk touches the upper triangle: m*(m+1)/2 dot products of length batch
  state.SetItemsProcessed(state.iterations() * (m * (m + 1) / 2 + 10 * m) * 2 * batch);
}
BENCHMARK(BM_gram_fold)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_ridge_solve(benchmark::State& state) {
  const elm::Index m = state.range(0);
  elm::DenseMatrix a = random_matrix(m, m + 50, 5);
  elm::GramAccumulator acc(m, 10);
  acc.fold(a, random_matrix(10, m + 50, 6));
  for (auto _ : state) {
    elm::DenseMatrix w = elm::ridge_solve(acc.gram(), acc.cross(), 1e-6);
    benchmark::DoNotOptimize(w.data());
  }
  state.SetItemsProcessed(state.iterations() * m * m * m / 3);
}
BENCHMARK(BM_ridge_solve)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_hidden_pass(benchmark::State& state) {
  const elm::Index m = state.range(0);
  const elm::Index l = 784, batch = 2048;
  elm::InputWeights iw = elm::random_bipolar(m, l, 7);
  elm::DenseMatrix x = random_matrix(l, batch, 8);
  for (auto _ : state) {
    elm::DenseMatrix h = elm::hidden(iw, elm::Activation::Logistic, x);
    benchmark::DoNotOptimize(h.data());
  }
  state.SetItemsProcessed(state.iterations() * 2 * m * l * batch);
}
BENCHMARK(BM_hidden_pass)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_shape_ciw(benchmark::State& state) {
  elm::LabeledDataset ds = random_dataset(784, 4000, 10, 9);
  elm::ShapeConfig cfg;
  for (auto _ : state) {
    elm::InputWeights iw = elm::shape(elm::Method::Ciw, ds, state.range(0), cfg, 10);
    benchmark::DoNotOptimize(iw.w.data());
  }
}
BENCHMARK(BM_shape_ciw)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_shape_rf_c(benchmark::State& state) {
  elm::LabeledDataset ds = random_dataset(784, 4000, 10, 11);
  elm::ShapeConfig cfg;
  for (auto _ : state) {
    elm::InputWeights iw = elm::shape(elm::Method::RfC, ds, state.range(0), cfg, 12);
    benchmark::DoNotOptimize(iw.w.data());
  }
}
BENCHMARK(BM_shape_rf_c)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_rf_masks(benchmark::State& state) {
  elm::RfMaskConfig cfg;
  cfg.side = 28;
  for (auto _ : state) {
    elm::DenseMatrix masks = elm::rf_masks(state.range(0), cfg, 13);
    benchmark::DoNotOptimize(masks.data());
  }
}
BENCHMARK(BM_rf_masks)->Arg(1000)->Arg(15000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
