#pragma once

#include "temprel/composition.hpp"
#include "temprel/document.hpp"
#include "temprel/graph.hpp"
#include "temprel/kb.hpp"
#include "temprel/lexicon.hpp"
#include "temprel/perceptron.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace temprel {

/// Decode-time accounting for corpus build audits.
struct GreedyStats {
  std::size_t classifier_edges = 0;
  std::size_t closure_edges = 0;
  std::size_t vague_fills = 0;
  /// Classifier labels rejected because committing them would force a
  /// closure contradiction.
  std::size_t conflict_skips = 0;
};

/// Greedy decoding with interleaved closure: same-sentence pairs first, then
/// neighboring-sentence pairs, each in sorted (m, n) order. A pair already
/// labeled by an earlier closure step is skipped; a committed label triggers
/// an immediate closure. Predicted vague labels assert nothing and commit no
/// edge; pairs still unlabeled at the end are filled with vague. Predictions
/// whose closure would contradict an existing label are skipped and counted,
/// which is what makes closure conflicts impossible by construction.
TemporalGraph infer_greedy(const Document& doc, const LexicalResource& lex,
                           const PerceptronModel& model_same,
                           const PerceptronModel& model_neighbor,
                           const CompositionTable& table,
                           GreedyStats* stats = nullptr);

/// One decision variable of the global problem: a candidate pair with its
/// classifier scores and its prior-knowledge distribution.
struct PairVariable {
  int source = 0;
  int target = 0;
  std::array<double, kRelationCount> scores{};
  std::array<double, kRelationCount> priors{};
};

/// Maximize sum of (score + lambda * prior) over one label per pair, subject
/// to transitivity on every triangle whose three pairs are all candidates.
struct IlpProblem {
  std::vector<PairVariable> pairs;
  double lambda = 0.5;
  /// Optional search budget; 0 means unlimited.
  std::uint64_t max_nodes = 0;
};

struct Assignment {
  std::map<std::pair<int, int>, Relation> labels;
  double objective = 0.0;
  /// False only when the node budget cut the search short.
  bool optimal = true;
  std::uint64_t nodes_explored = 0;
};

/// Exact maximizer via depth-first branch and bound: pairs are ordered by
/// decreasing coefficient gap, domains are pruned by composition constraints
/// from decided triangles, and subtrees are cut when the optimistic bound
/// cannot beat the incumbent. Deterministic for fixed input.
Assignment infer_ilp(const IlpProblem& problem, const CompositionTable& table);

/// Assembles the global problem for one document: classifier scores per
/// sentence-distance bucket and prior distributions from the knowledge base
/// (uniform for pairs the KB has never seen).
IlpProblem build_problem(const Document& doc, const LexicalResource& lex,
                         const PerceptronModel& model_same,
                         const PerceptronModel& model_neighbor,
                         const KnowledgeBase& kb, double lambda = 0.5);

/// Graph form of a solved assignment over the document's events.
TemporalGraph assignment_graph(const Document& doc, const Assignment& assignment);

}  // namespace temprel
