#include "temprel/composition.hpp"
#include "temprel/features.hpp"
#include "temprel/graph.hpp"
#include "temprel/inference.hpp"
#include "temprel/kb.hpp"
#include "temprel/rng.hpp"

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

namespace {

using namespace temprel;

const CompositionTable& table() {
  static const CompositionTable t = derive_composition_table();
  return t;
}

TemporalGraph random_graph(std::mt19937_64& rng, int nodes, int keep_percent) {
  std::vector<Interval> realization;
  for (int i = 0; i < nodes; ++i) {
    const int lo = static_cast<int>(bounded_uniform(rng, 24));
    realization.push_back({lo, lo + 1 + static_cast<int>(bounded_uniform(rng, 10))});
  }
  std::vector<int> ids(static_cast<std::size_t>(nodes));
  std::iota(ids.begin(), ids.end(), 0);
  TemporalGraph graph(ids);
  for (int i = 0; i < nodes; ++i) {
    for (int j = i + 1; j < nodes; ++j) {
      if (bounded_uniform(rng, 100) <
          static_cast<std::uint64_t>(keep_percent)) {
        graph.add_edge(i, j,
                       classify(realization[static_cast<std::size_t>(i)],
                                realization[static_cast<std::size_t>(j)]));
      }
    }
  }
  return graph;
}

IlpProblem random_problem(std::mt19937_64& rng, int events) {
  IlpProblem problem;
  for (int i = 0; i < events; ++i) {
    for (int j = i + 1; j < events; ++j) {
      PairVariable var;
      var.source = i;
      var.target = j;
      double score_sum = 0.0, prior_sum = 0.0;
      for (int r = 0; r < kRelationCount; ++r) {
        var.scores[static_cast<std::size_t>(r)] = uniform_unit(rng) + 0.01;
        var.priors[static_cast<std::size_t>(r)] = uniform_unit(rng) + 0.01;
        score_sum += var.scores[static_cast<std::size_t>(r)];
        prior_sum += var.priors[static_cast<std::size_t>(r)];
      }
      for (int r = 0; r < kRelationCount; ++r) {
        var.scores[static_cast<std::size_t>(r)] /= score_sum;
        var.priors[static_cast<std::size_t>(r)] /= prior_sum;
      }
      problem.pairs.push_back(var);
    }
  }
  return problem;
}

void BM_DeriveCompositionTable(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(derive_composition_table());
  }
}
BENCHMARK(BM_DeriveCompositionTable);

void BM_Close(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const TemporalGraph graph =
      random_graph(rng, static_cast<int>(state.range(0)), 60);
  for (auto _ : state) {
    benchmark::DoNotOptimize(close(graph, table()));
  }
}
BENCHMARK(BM_Close)->Arg(8)->Arg(16)->Arg(32);

void BM_CheckConsistent(benchmark::State& state) {
  std::mt19937_64 rng(12);
  const TemporalGraph graph =
      close(random_graph(rng, static_cast<int>(state.range(0)), 60), table());
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_consistent(graph, table()));
  }
}
BENCHMARK(BM_CheckConsistent)->Arg(8)->Arg(32);

void BM_InferIlp(benchmark::State& state) {
  std::mt19937_64 rng(13);
  const IlpProblem problem = random_problem(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(infer_ilp(problem, table()));
  }
}
BENCHMARK(BM_InferIlp)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_Extract(benchmark::State& state) {
  Document doc;
  doc.doc_id = "bench";
  std::vector<Token> sentence;
  for (int i = 0; i < 30; ++i) {
    sentence.push_back({"word" + std::to_string(i), i % 7 ? "NN" : "IN",
                        "word" + std::to_string(i)});
  }
  sentence[5] = {"asked", "VBD", "ask"};
  sentence[20] = {"helped", "VBD", "help"};
  doc.sentences.push_back(std::move(sentence));
  doc.events = {{0, 0, 5, "ask.01", {}}, {1, 0, 20, "help.01", {}}};
  const LexicalResource lex = LexicalResource::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract(doc, doc.events[0], doc.events[1], lex));
  }
}
BENCHMARK(BM_Extract);

void BM_KbQueries(benchmark::State& state) {
  std::mt19937_64 rng(14);
  KnowledgeBase kb;
  for (int i = 0; i < 20000; ++i) {
    kb.add_counts("v" + std::to_string(bounded_uniform(rng, 500)) + ".01",
                  "w" + std::to_string(bounded_uniform(rng, 500)) + ".01",
                  kAllRelations[bounded_uniform(rng, 6)],
                  1 + bounded_uniform(rng, 40));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(kb.eta("v7.01", "w13.01"));
    benchmark::DoNotOptimize(kb.prior_distribution("v7.01", "w13.01"));
    benchmark::DoNotOptimize(
        kb.neighbor_distribution("v7.01", NeighborDirection::kTBefore, 10));
  }
}
BENCHMARK(BM_KbQueries);

void BM_Accumulate(benchmark::State& state) {
  std::mt19937_64 rng(15);
  std::vector<TemporalGraph> graphs;
  std::vector<std::map<int, std::string>> frames;
  for (int g = 0; g < 100; ++g) {
    graphs.push_back(random_graph(rng, 8, 70));
    std::map<int, std::string> mapping;
    for (int node : graphs.back().nodes()) {
      mapping[node] = "v" + std::to_string(bounded_uniform(rng, 50)) + ".01";
    }
    frames.push_back(std::move(mapping));
  }
  for (auto _ : state) {
    KnowledgeBase kb;
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      kb.accumulate(graphs[g], frames[g]);
    }
    benchmark::DoNotOptimize(kb);
  }
}
BENCHMARK(BM_Accumulate);

}  // namespace

BENCHMARK_MAIN();
