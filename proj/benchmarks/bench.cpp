#include <benchmark/benchmark.h>

#include <random>

#include "posetmine/apriori.hpp"
#include "posetmine/enumerate.hpp"
#include "posetmine/rules.hpp"

using namespace pmine;

namespace {

TransactionDB binary_db(std::size_t items, std::size_t rows, double density, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution bit(density);
  std::vector<FactorPoset> fs(items, FactorPoset::chain({"0", "1"}));
  std::vector<Attribute> attrs;
  for (std::size_t i = 0; i < items; ++i) {
    Attribute a;
    a.name = "i" + std::to_string(i);
    a.first_factor = i;
    attrs.push_back(a);
  }
  std::vector<ElementVector> data;
  for (std::size_t r = 0; r < rows; ++r) {
    ElementVector x;
    for (std::size_t i = 0; i < items; ++i) x.coords.push_back(bit(rng) ? 1 : 0);
    data.push_back(std::move(x));
  }
  return TransactionDB(ProductPoset(std::move(fs)), std::move(data), std::move(attrs));
}

/// Product of `n` taxonomies of depth 2 with `fan` children per node.
TransactionDB tree_db(std::size_t n, std::size_t fan, std::size_t rows, unsigned seed) {
  std::vector<std::string> labels{"root"};
  std::vector<std::optional<NodeId>> parent{std::nullopt};
  for (std::size_t a = 0; a < fan; ++a) {
    const auto mid = static_cast<NodeId>(labels.size());
    labels.push_back("m" + std::to_string(a));
    parent.emplace_back(0);
    for (std::size_t b = 0; b < fan; ++b) {
      labels.push_back("l" + std::to_string(a) + "_" + std::to_string(b));
      parent.emplace_back(mid);
    }
  }
  std::vector<FactorPoset> fs(n, FactorPoset::tree(labels, parent));
  std::mt19937 rng(seed);
  std::vector<ElementVector> data;
  for (std::size_t r = 0; r < rows; ++r) {
    ElementVector x;
    for (std::size_t i = 0; i < n; ++i) x.coords.push_back(static_cast<NodeId>(rng() % labels.size()));
    data.push_back(std::move(x));
  }
  return TransactionDB(ProductPoset(std::move(fs)), std::move(data));
}

void BM_SupportBatch(benchmark::State& state) {
  auto db = binary_db(20, static_cast<std::size_t>(state.range(0)), 0.4, 1);
  std::mt19937 rng(2);
  std::vector<ElementVector> batch;
  for (int k = 0; k < 1000; ++k) {
    ElementVector x;
    for (std::size_t i = 0; i < 20; ++i) x.coords.push_back(rng() % 4 == 0);
    batch.push_back(std::move(x));
  }
  for (auto _ : state) benchmark::DoNotOptimize(db.support_counts(batch, static_cast<unsigned>(state.range(1))));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SupportBatch)->Args({1000, 1})->Args({10000, 1})->Args({10000, 4});

void BM_Apriori(benchmark::State& state) {
  auto db = binary_db(static_cast<std::size_t>(state.range(0)), 500, 0.5, 3);
  const auto t = absolute_threshold(0.1, db.size());
  std::size_t out = 0;
  for (auto _ : state) out = apriori_frequent(db, t).size();
  state.counters["frequent"] = static_cast<double>(out);
}
BENCHMARK(BM_Apriori)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

// Time per border element: joint generation pays one duality test per output,
// so this stays roughly flat as the border grows.
void BM_JointGenerationDelay(benchmark::State& state) {
  auto db = binary_db(static_cast<std::size_t>(state.range(0)), 60, 0.5, 4);
  const auto t = absolute_threshold(0.15, db.size());
  std::size_t outputs = 0;
  for (auto _ : state) {
    auto b = generate_minimal_infrequent(db, t);
    outputs = b.minimal_infrequent.size() + b.maximal_frequent.size();
  }
  state.counters["border"] = static_cast<double>(outputs);
  state.counters["per_element"] =
      benchmark::Counter(static_cast<double>(outputs) * static_cast<double>(state.iterations()),
                         benchmark::Counter::kIsRate | benchmark::Counter::kInvert);
}
BENCHMARK(BM_JointGenerationDelay)->Arg(8)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_TreeBorder(benchmark::State& state) {
  auto db = tree_db(static_cast<std::size_t>(state.range(0)), 3, 80, 5);
  std::size_t outputs = 0;
  for (auto _ : state) {
    auto b = generate_minimal_infrequent(db, 4);
    outputs = b.minimal_infrequent.size() + b.maximal_frequent.size();
  }
  state.counters["border"] = static_cast<double>(outputs);
}
BENCHMARK(BM_TreeBorder)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DualCheck(benchmark::State& state) {
  auto db = tree_db(static_cast<std::size_t>(state.range(0)), 3, 80, 6);
  auto b = generate_minimal_infrequent(db, 4);
  for (auto _ : state) benchmark::DoNotOptimize(dual_check(db.space(), b.minimal_infrequent, b.maximal_frequent));
  state.counters["A"] = static_cast<double>(b.minimal_infrequent.size());
  state.counters["B"] = static_cast<double>(b.maximal_frequent.size());
}
BENCHMARK(BM_DualCheck)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Rules(benchmark::State& state) {
  auto db = binary_db(12, 200, 0.5, 7);
  std::size_t out = 0;
  for (auto _ : state) out = gen_rules(db, 0.6, 0.1).size();
  state.counters["rules"] = static_cast<double>(out);
}
BENCHMARK(BM_Rules)->Unit(benchmark::kMillisecond);

void BM_KBoxes(benchmark::State& state) {
  std::mt19937 rng(8);
  std::vector<Point> pts;
  for (int k = 0; k < state.range(0); ++k)
    pts.push_back({static_cast<std::int64_t>(rng() % 1000), static_cast<std::int64_t>(rng() % 1000)});
  std::size_t out = 0;
  for (auto _ : state) out = gen_maximal_kboxes(pts, 1).size();
  state.counters["boxes"] = static_cast<double>(out);
}
BENCHMARK(BM_KBoxes)->Arg(10)->Arg(15)->Arg(20)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
