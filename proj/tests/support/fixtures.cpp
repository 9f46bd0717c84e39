#include "support/fixtures.hpp"

#include "temprel/lexicon.hpp"
#include "temprel/rng.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

namespace temprel::testing {

Document sentence_doc(const std::vector<std::array<std::string, 3>>& tokens) {
  Document doc;
  doc.doc_id = "fixture";
  std::vector<Token> sentence;
  for (const auto& [text, pos, lemma] : tokens) {
    sentence.push_back({text, pos, lemma});
  }
  doc.sentences.push_back(std::move(sentence));
  int id = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (tokens[t][1].rfind("VB", 0) == 0) {
      doc.events.push_back(
          {id++, 0, static_cast<int>(t), tokens[t][2] + ".01", {}});
    }
  }
  return doc;
}

KnowledgeBase extreme_fixture_kb() {
  struct Row {
    const char* v1;
    const char* v2;
    std::uint64_t before;
    std::uint64_t after;
  };
  static constexpr Row kRows[] = {
      {"chop.01", "taste.01", 133, 8},
      {"concern.01", "protect.01", 110, 10},
      {"conspire.01", "kill.01", 113, 6},
      {"debate.01", "vote.01", 48, 5},
      {"dedicate.01", "promote.02", 67, 7},
      {"fight.01", "overthrow.01", 98, 8},
      {"achieve.01", "desire.01", 7, 104},
      {"admire.01", "respect.01", 7, 121},
      {"clean.02", "contaminate.01", 3, 82},
      {"defend.01", "accuse.01", 13, 160},
      {"die.01", "crash.01", 8, 223},
      {"overthrow.01", "elect.01", 3, 100},
  };
  KnowledgeBase kb;
  for (const Row& row : kRows) {
    kb.add_counts(row.v1, row.v2, Relation::kBefore, row.before);
    kb.add_counts(row.v1, row.v2, Relation::kAfter, row.after);
  }
  return kb;
}

TemporalGraph random_consistent_graph(std::mt19937_64& rng, int max_nodes) {
  const int n = 2 + static_cast<int>(bounded_uniform(
                        rng, static_cast<std::uint64_t>(max_nodes - 1)));
  std::vector<Interval> realization;
  for (int i = 0; i < n; ++i) {
    const int lo = static_cast<int>(bounded_uniform(rng, 16));
    const int hi = lo + 1 + static_cast<int>(bounded_uniform(rng, 8));
    realization.push_back({lo, hi});
  }
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  TemporalGraph graph(ids);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (bounded_uniform(rng, 100) < 70) {
        graph.add_edge(i, j,
                       classify(realization[static_cast<std::size_t>(i)],
                                realization[static_cast<std::size_t>(j)]));
      }
    }
  }
  return graph;
}

IlpProblem random_problem(std::mt19937_64& rng, int max_events, int max_pairs) {
  const int n = 2 + static_cast<int>(bounded_uniform(
                        rng, static_cast<std::uint64_t>(max_events - 1)));
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  deterministic_shuffle(slots, rng);
  const std::size_t want =
      1 + bounded_uniform(rng, std::min<std::uint64_t>(
                                   max_pairs, slots.size()));
  slots.resize(want);
  std::sort(slots.begin(), slots.end());

  auto simplex = [&rng] {
    std::array<double, kRelationCount> values{};
    double total = 0.0;
    for (double& v : values) {
      v = uniform_unit(rng) + 0.01;
      total += v;
    }
    for (double& v : values) v /= total;
    return values;
  };

  IlpProblem problem;
  for (const auto& [m, k] : slots) {
    PairVariable var;
    var.source = m;
    var.target = k;
    var.scores = simplex();
    var.priors = simplex();
    problem.pairs.push_back(var);
  }
  const std::array<double, 3> lambdas = {0.0, 0.5, 1.0};
  problem.lambda = lambdas[bounded_uniform(rng, 3)];
  return problem;
}

Assignment brute_force_ilp(const IlpProblem& problem,
                           const CompositionTable& table) {
  const std::size_t k = problem.pairs.size();
  std::map<std::pair<int, int>, std::size_t> index;
  for (std::size_t v = 0; v < k; ++v) {
    index[{problem.pairs[v].source, problem.pairs[v].target}] = v;
  }
  std::vector<int> nodes;
  for (const PairVariable& pair : problem.pairs) {
    nodes.push_back(pair.source);
    nodes.push_back(pair.target);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  struct Triangle {
    std::size_t ab, bc, ac;
  };
  std::vector<Triangle> triangles;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      auto ab = index.find({nodes[i], nodes[j]});
      if (ab == index.end()) continue;
      for (std::size_t l = j + 1; l < nodes.size(); ++l) {
        auto bc = index.find({nodes[j], nodes[l]});
        auto ac = index.find({nodes[i], nodes[l]});
        if (bc == index.end() || ac == index.end()) continue;
        triangles.push_back({ab->second, bc->second, ac->second});
      }
    }
  }

  std::vector<int> labels(k, 0);
  Assignment best;
  best.objective = -1e300;
  bool found = false;
  for (;;) {
    bool feasible = true;
    for (const Triangle& tri : triangles) {
      const auto a = static_cast<Relation>(labels[tri.ab]);
      const auto b = static_cast<Relation>(labels[tri.bc]);
      const auto c = static_cast<Relation>(labels[tri.ac]);
      if (!table.compose(a, b).contains(c) ||
          !table.compose(c, reverse(b)).contains(a) ||
          !table.compose(reverse(a), c).contains(b)) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      double value = 0.0;
      for (std::size_t v = 0; v < k; ++v) {
        const auto idx = static_cast<std::size_t>(labels[v]);
        value += problem.pairs[v].scores[idx] +
                 problem.lambda * problem.pairs[v].priors[idx];
      }
      if (!found || value > best.objective) {
        found = true;
        best.objective = value;
        best.labels.clear();
        for (std::size_t v = 0; v < k; ++v) {
          best.labels[{problem.pairs[v].source, problem.pairs[v].target}] =
              static_cast<Relation>(labels[v]);
        }
      }
    }
    std::size_t digit = k;
    while (digit > 0) {
      --digit;
      if (++labels[digit] < kRelationCount) break;
      labels[digit] = 0;
      if (digit == 0) return best;
    }
    if (k == 0) return best;
  }
}

PerceptronModel rigged_model(DistanceBucket bucket,
                             PerceptronModel::WeightMap weights) {
  return PerceptronModel(bucket, std::move(weights), 1, 0);
}

LexicalResource lexicon_with_connectives(const std::string& comma_list) {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() /
      ("temprel-fixture-lex-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  {
    std::ofstream config(dir / "config.txt");
    config << "temporal_connectives=" << comma_list << "\n";
  }
  LexicalResource lex = load_lexical_resource(dir);
  fs::remove_all(dir);
  return lex;
}

namespace {

const std::vector<std::string>& verb_pool() {
  static const std::vector<std::string> pool = {
      "alert", "bake", "call", "dance", "erupt",
      "fly",   "greet", "hike", "jump",  "knit"};
  return pool;
}

const std::vector<std::string>& name_pool() {
  static const std::vector<std::string> pool = {"Alice", "Ben",  "Cara",
                                                "Dan",   "Eve",  "Fay"};
  return pool;
}

struct Connective {
  const char* word;
  const char* pos;
  Relation label;
};

const std::array<Connective, 3>& connectives() {
  static const std::array<Connective, 3> all = {{
      {"before", "IN", Relation::kBefore},
      {"after", "IN", Relation::kAfter},
      {"and", "CC", Relation::kVague},
  }};
  return all;
}

Token name_token(std::mt19937_64& rng) {
  const std::string& name = name_pool()[bounded_uniform(rng, name_pool().size())];
  return {name, "NNP", lowercase(name)};
}

Token verb_token(std::mt19937_64& rng, std::string* lemma_out) {
  const std::string& lemma = verb_pool()[bounded_uniform(rng, verb_pool().size())];
  *lemma_out = lemma;
  return {lemma + "ed", "VBD", lemma};
}

Token adverb_token(std::mt19937_64& rng) {
  static const std::vector<std::string> pool = {"quietly", "slowly", "soon",
                                                "again", "early"};
  const std::string& word = pool[bounded_uniform(rng, pool.size())];
  return {word, "RB", word};
}

Token noun_token(std::mt19937_64& rng) {
  static const std::vector<std::string> pool = {"crew", "plan", "report",
                                                "team", "siren"};
  const std::string& word = pool[bounded_uniform(rng, pool.size())];
  return {word, "NN", word};
}

}  // namespace

std::vector<Document> connective_corpus(int documents, std::uint64_t seed,
                                        bool with_gold) {
  std::mt19937_64 rng(seed);
  std::vector<Document> docs;
  for (int d = 0; d < documents; ++d) {
    Document doc;
    doc.doc_id = "syn-" + std::to_string(d);

    const Connective& c1 = connectives()[bounded_uniform(rng, 3)];
    const Connective& c2 = connectives()[bounded_uniform(rng, 3)];
    std::string lemma1, lemma2, lemma3;

    // Sentence shapes vary so no context-window feature lines up with the
    // planted rule; only the connective words carry it.
    std::vector<Token> s1;
    if (bounded_uniform(rng, 2)) s1.push_back(adverb_token(rng));
    if (bounded_uniform(rng, 2)) {
      s1.push_back({"The", "DT", "the"});
      s1.push_back(noun_token(rng));
    }
    s1.push_back(name_token(rng));
    if (bounded_uniform(rng, 2)) s1.push_back(adverb_token(rng));
    const int v1 = static_cast<int>(s1.size());
    s1.push_back(verb_token(rng, &lemma1));
    s1.push_back({c1.word, c1.pos, c1.word});
    s1.push_back(name_token(rng));
    if (bounded_uniform(rng, 2)) s1.push_back(adverb_token(rng));
    const int v2 = static_cast<int>(s1.size());
    s1.push_back(verb_token(rng, &lemma2));
    if (bounded_uniform(rng, 2)) s1.push_back(noun_token(rng));
    s1.push_back({".", ".", "."});

    std::vector<Token> s2;
    s2.push_back({c2.word, c2.pos, c2.word});
    s2.push_back(name_token(rng));
    if (bounded_uniform(rng, 2)) s2.push_back(adverb_token(rng));
    const int v3 = static_cast<int>(s2.size());
    s2.push_back(verb_token(rng, &lemma3));
    if (bounded_uniform(rng, 2)) s2.push_back(noun_token(rng));
    s2.push_back({".", ".", "."});

    doc.sentences = {std::move(s1), std::move(s2)};
    doc.events = {
        {0, 0, v1, lemma1 + ".01", {}},
        {1, 0, v2, lemma2 + ".01", {}},
        {2, 1, v3, lemma3 + ".01", {}},
    };
    if (with_gold) {
      // The (0, 2) pair is left unannotated: both connectives sit between
      // its mentions, so no single marker determines it.
      doc.gold = {
          {0, 1, c1.label},
          {1, 2, c2.label},
      };
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

namespace {

constexpr int kAmbiguousPoolSize = 40;

Document ambiguous_doc(const std::string& doc_id, const std::string& filler) {
  Document doc;
  doc.doc_id = doc_id;
  doc.sentences = {{
      {"Alice", "NNP", "alice"},
      {"planned", "VBD", "plan"},
      {filler, "IN", filler},
      {"struck", "VBD", "strike"},
      {".", ".", "."},
  }};
  doc.events = {
      {0, 0, 1, "plan.01", {}},
      {1, 0, 3, "strike.01", {}},
  };
  return doc;
}

}  // namespace

std::pair<std::string, std::string> ambiguous_pair() {
  return {"plan.01", "strike.01"};
}

std::vector<Document> ambiguous_eval_docs(int documents, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Document> docs;
  for (int d = 0; d < documents; ++d) {
    const auto token = bounded_uniform(rng, kAmbiguousPoolSize);
    docs.push_back(ambiguous_doc("amb-eval-" + std::to_string(d),
                                 "p" + std::to_string(token)));
  }
  return docs;
}

PerceptronModel ambiguous_model() {
  PerceptronModel::WeightMap weights;
  constexpr double kLean = 0.05;
  for (int i = 0; i < kAmbiguousPoolSize; ++i) {
    const double lean = (i % 2 == 0) ? kLean : -kLean;
    weights["prep2:p" + std::to_string(i)] = {lean, -lean, 0.0, 0.0, 0.0, 0.0};
  }
  return rigged_model(DistanceBucket::kSame, std::move(weights));
}

}  // namespace temprel::testing
