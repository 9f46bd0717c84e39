#include "temprel/errors.hpp"
#include "temprel/kb.hpp"
#include "temprel/rng.hpp"

#include "support/fixtures.hpp"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace temprel;

namespace {

TemporalGraph chain_graph(std::initializer_list<Relation> labels) {
  std::vector<int> ids;
  for (std::size_t i = 0; i <= labels.size(); ++i) ids.push_back(static_cast<int>(i));
  TemporalGraph graph(ids);
  int node = 0;
  for (Relation r : labels) {
    graph.add_edge(node, node + 1, r);
    ++node;
  }
  return graph;
}

std::map<int, std::string> frames_of(std::initializer_list<const char*> names) {
  std::map<int, std::string> out;
  int id = 0;
  for (const char* name : names) out[id++] = name;
  return out;
}

std::filesystem::path temp_file(const std::string& tag) {
  return std::filesystem::temp_directory_path() /
         ("temprel-kb-" + tag + ".tsv");
}

}  // namespace

TEST_CASE("accumulating an empty graph only bumps the graph counter") {
  KnowledgeBase kb;
  kb.accumulate(TemporalGraph({0, 1}), frames_of({"a.01", "b.01"}));
  CHECK(kb.graph_count() == 1);
  CHECK(kb.counts().empty());
}

TEST_CASE("edge counts add up over documents") {
  KnowledgeBase kb;
  auto graph = chain_graph({Relation::kBefore});
  kb.accumulate(graph, frames_of({"ask.01", "help.01"}));
  kb.accumulate(graph, frames_of({"ask.01", "help.01"}));
  CHECK(kb.count("ask.01", "help.01", Relation::kBefore) == 2);
  CHECK(kb.count("help.01", "ask.01", Relation::kAfter) == 0);  // text order only
  CHECK(kb.graph_count() == 2);
}

TEST_CASE("counts match a brute-force recount over random graphs") {
  std::mt19937_64 rng(808);
  std::vector<TemporalGraph> graphs;
  std::vector<std::map<int, std::string>> frames;
  const std::vector<std::string> pool = {"a.01", "b.01", "c.01", "d.02"};
  KnowledgeBase kb;
  for (int g = 0; g < 60; ++g) {
    const TemporalGraph graph = testing::random_consistent_graph(rng, 6);
    std::map<int, std::string> mapping;
    for (int node : graph.nodes()) {
      mapping[node] = pool[bounded_uniform(rng, pool.size())];
    }
    kb.accumulate(graph, mapping);
    graphs.push_back(graph);
    frames.push_back(mapping);
  }

  // Independent triple-loop recount.
  std::map<std::tuple<std::string, std::string, int>, std::uint64_t> recount;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    for (const auto& [pair, relation] : graphs[g].edges()) {
      ++recount[{frames[g].at(pair.first), frames[g].at(pair.second),
                 index_of(relation)}];
    }
  }
  std::uint64_t total_kb = 0;
  for (const auto& [key, slots] : kb.counts()) {
    for (Relation r : kAllRelations) {
      const std::uint64_t c = slots[static_cast<std::size_t>(index_of(r))];
      total_kb += c;
      if (c != 0) {
        CHECK(recount[{key.first, key.second, index_of(r)}] == c);
      }
    }
  }
  std::uint64_t total_recount = 0;
  for (const auto& [key, c] : recount) total_recount += c;
  CHECK(total_kb == total_recount);
  CHECK(kb.graph_count() == graphs.size());
}

TEST_CASE("merge in any order equals single-pass accumulation") {
  std::mt19937_64 rng(4242);
  std::vector<TemporalGraph> graphs;
  std::vector<std::map<int, std::string>> frames;
  for (int g = 0; g < 12; ++g) {
    graphs.push_back(testing::random_consistent_graph(rng, 5));
    std::map<int, std::string> mapping;
    for (int node : graphs.back().nodes()) {
      mapping[node] = "v" + std::to_string(bounded_uniform(rng, 3)) + ".01";
    }
    frames.push_back(mapping);
  }

  KnowledgeBase sequential;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    sequential.accumulate(graphs[g], frames[g]);
  }

  KnowledgeBase merged_forward, merged_backward;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    KnowledgeBase part;
    part.accumulate(graphs[g], frames[g]);
    merged_forward.merge(part);
  }
  for (std::size_t g = graphs.size(); g-- > 0;) {
    KnowledgeBase part;
    part.accumulate(graphs[g], frames[g]);
    merged_backward.merge(part);
  }
  CHECK(merged_forward == sequential);
  CHECK(merged_backward == sequential);
}

TEST_CASE("eta applies add-one smoothing and stays complementary") {
  const KnowledgeBase kb = testing::extreme_fixture_kb();

  const PairPrior unseen = kb.eta("never.01", "seen.01");
  CHECK(unseen.eta_before == 0.5);
  CHECK(unseen.eta_after == 0.5);

  const PairPrior chop = kb.eta("chop.01", "taste.01");
  CHECK(chop.eta_before == 134.0 / 143.0);
  CHECK(chop.eta_before + chop.eta_after == 1.0);

  const PairPrior achieve = kb.eta("achieve.01", "desire.01");
  CHECK(achieve.eta_after == 1.0 - 8.0 / 113.0);
}

TEST_CASE("prior distributions are smoothed and normalized") {
  KnowledgeBase kb;
  CHECK(kb.prior_distribution("x.01", "y.01").prob(Relation::kEqual) ==
        doctest::Approx(1.0 / 6.0));

  kb.add_counts("x.01", "y.01", Relation::kBefore, 4);
  const PriorDistribution prior = kb.prior_distribution("x.01", "y.01");
  CHECK(prior.prob(Relation::kBefore) == doctest::Approx(0.5));
  CHECK(prior.prob(Relation::kAfter) == doctest::Approx(0.1));

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    KnowledgeBase random_kb;
    for (int e = 0; e < 5; ++e) {
      random_kb.add_counts("a.01", "b.01",
                           kAllRelations[bounded_uniform(rng, 6)],
                           bounded_uniform(rng, 50));
    }
    double total = 0.0;
    for (double p : random_kb.prior_distribution("a.01", "b.01").probs) {
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("neighbor distributions sort by conditional probability") {
  KnowledgeBase kb;
  kb.add_counts("v.01", "only.01", Relation::kBefore, 3);
  const NeighborDistribution sole =
      kb.neighbor_distribution("v.01", NeighborDirection::kTBefore, 5);
  REQUIRE(sole.entries.size() == 1);
  CHECK(sole.entries[0].first == "only.01");
  CHECK(sole.entries[0].second == doctest::Approx(1.0));

  kb.add_counts("w.01", "a.01", Relation::kAfter, 2);
  kb.add_counts("w.01", "b.01", Relation::kAfter, 1);
  kb.add_counts("w.01", "c.01", Relation::kAfter, 1);
  const NeighborDistribution trio =
      kb.neighbor_distribution("w.01", NeighborDirection::kTAfter, 5);
  REQUIRE(trio.entries.size() == 3);
  CHECK(trio.entries[0].second == doctest::Approx(0.5));
  CHECK(trio.entries[1].second == doctest::Approx(0.25));
  CHECK(trio.entries[2].second == doctest::Approx(0.25));
  CHECK(trio.entries[1].first == "b.01");  // lexicographic tie-break
  CHECK(trio.entries[2].first == "c.01");

  double mass = 0.0;
  for (const auto& [frame, p] : trio.entries) mass += p;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  // Zero marginal: empty listing instead of a division.
  CHECK(kb.neighbor_distribution("v.01", NeighborDirection::kTAfter, 5)
            .entries.empty());
}

TEST_CASE("extreme pair listing honors threshold and support") {
  const KnowledgeBase kb = testing::extreme_fixture_kb();
  const auto at_09 = kb.extreme_pairs(0.9, 20);
  CHECK(at_09.size() == testing::kExtremeFixtureRows);

  const auto at_999 = kb.extreme_pairs(0.999, 20);
  CHECK(at_999.size() < at_09.size());
  for (const ExtremePair& strict : at_999) {
    const bool found =
        std::any_of(at_09.begin(), at_09.end(), [&](const ExtremePair& loose) {
          return loose.frame1 == strict.frame1 && loose.frame2 == strict.frame2;
        });
    CHECK(found);
  }

  for (std::size_t i = 1; i < at_09.size(); ++i) {
    CHECK(at_09[i - 1].ratio >= at_09[i].ratio);
  }

  CHECK(KnowledgeBase().extreme_pairs(0.9, 1).empty());
  CHECK_THROWS_AS(kb.extreme_pairs(0.4, 1), ValidationError);
}

TEST_CASE("KB files round-trip and stay sorted") {
  KnowledgeBase kb;
  kb.add_counts("b.01", "c.01", Relation::kAfter, 7);
  kb.add_counts("a.01", "z.01", Relation::kBefore, 3);
  kb.add_counts("a.01", "z.01", Relation::kVague, 2);
  const auto path = temp_file("roundtrip");
  kb.save(path);

  const KnowledgeBase loaded = KnowledgeBase::load(path);
  CHECK(loaded == kb);

  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 6);  // header, graphs, 3 data lines, checksum
  CHECK(lines[0] == "#temprob-kb v1");
  CHECK(lines[1] == "graphs=0");
  CHECK(std::is_sorted(lines.begin() + 2, lines.end() - 1));
  CHECK(lines.back().rfind("#crc32=", 0) == 0);
  std::filesystem::remove(path);

  const auto empty_path = temp_file("empty");
  KnowledgeBase().save(empty_path);
  CHECK(KnowledgeBase::load(empty_path) == KnowledgeBase());
  std::filesystem::remove(empty_path);
}

TEST_CASE("KB loading reports bad lines and checksum damage") {
  KnowledgeBase kb;
  kb.add_counts("a.01", "b.01", Relation::kBefore, 3);
  const auto path = temp_file("corrupt");
  kb.save(path);

  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  in.close();
  std::string text = buffer.str();

  // Corrupt the count field: the line fails to parse.
  std::string bad_count = text;
  bad_count.replace(bad_count.find("\t3\n"), 3, "\tx\n");
  {
    std::ofstream out(path);
    out << bad_count;
  }
  try {
    KnowledgeBase::load(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }

  // Change the data without fixing the footer: checksum mismatch.
  std::string bad_sum = text;
  bad_sum.replace(bad_sum.find("\t3\n"), 3, "\t4\n");
  {
    std::ofstream out(path);
    out << bad_sum;
  }
  CHECK_THROWS_AS(KnowledgeBase::load(path), ChecksumMismatch);
  std::filesystem::remove(path);
}

TEST_CASE("bootstrap produces seeded, normalized fold values") {
  std::mt19937_64 rng(31337);
  std::vector<TemporalGraph> graphs;
  std::vector<std::map<int, std::string>> frames;
  for (int g = 0; g < 30; ++g) {
    graphs.push_back(testing::random_consistent_graph(rng, 5));
    std::map<int, std::string> mapping;
    for (int node : graphs.back().nodes()) {
      mapping[node] = "v" + std::to_string(node % 3) + ".01";
    }
    frames.push_back(mapping);
  }
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"v0.01", "v1.01"}, {"v1.01", "v2.01"}};

  const auto run1 = bootstrap_priors(graphs, frames, pairs, 10, 0.5, 99);
  const auto run2 = bootstrap_priors(graphs, frames, pairs, 10, 0.5, 99);
  REQUIRE(run1.size() == 2);
  for (std::size_t p = 0; p < run1.size(); ++p) {
    REQUIRE(run1[p].fold_values.size() == 10);
    for (std::size_t f = 0; f < 10; ++f) {
      double total = 0.0;
      for (std::size_t r = 0; r < kRelationCount; ++r) {
        total += run1[p].fold_values[f][r];
        CHECK(run1[p].fold_values[f][r] == run2[p].fold_values[f][r]);
        CHECK(run1[p].min[r] <= run1[p].fold_values[f][r]);
        CHECK(run1[p].max[r] >= run1[p].fold_values[f][r]);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("bootstrap over a single graph at full fraction is constant") {
  std::vector<TemporalGraph> graphs{chain_graph({Relation::kBefore})};
  std::vector<std::map<int, std::string>> frames{frames_of({"a.01", "b.01"})};
  const auto results = bootstrap_priors(graphs, frames, {{"a.01", "b.01"}}, 5,
                                        1.0, 7);
  REQUIRE(results.size() == 1);
  for (const auto& fold : results[0].fold_values) {
    CHECK(fold == results[0].fold_values.front());
  }
  CHECK(results[0].min == results[0].fold_values.front());
  CHECK(results[0].max == results[0].fold_values.front());
}
