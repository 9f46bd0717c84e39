#pragma once

#include "temprel/document.hpp"
#include "temprel/graph.hpp"
#include "temprel/kb.hpp"
#include "temprel/relations.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace temprel {

struct LabelMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Standard scores with vague treated as abstention, a per-label breakdown
/// and the gold-by-predicted confusion matrix. awareness_f1 is filled by the
/// caller from awareness().
struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::array<LabelMetrics, kRelationCount> per_label{};
  double awareness_f1 = 0.0;
  /// counts[gold][predicted]; rows sum to the gold label counts.
  std::array<std::array<std::uint64_t, kRelationCount>, kRelationCount>
      confusion{};
};

/// Raw tallies that micro-aggregate across documents by addition.
struct ScoreCounts {
  std::array<std::array<std::uint64_t, kRelationCount>, kRelationCount>
      confusion{};

  void add(const ScoreCounts& other);
};

/// Tallies predictions over the pairs present in gold; a pair the prediction
/// leaves unlabeled counts as vague. Both graphs must share one node set.
ScoreCounts score_counts(const TemporalGraph& pred, const TemporalGraph& gold);

/// Metrics from tallies: precision over predicted non-vague, recall over
/// gold non-vague, micro over pairs.
EvalReport report_from_counts(const ScoreCounts& counts);

EvalReport score(const TemporalGraph& pred, const TemporalGraph& gold);

struct AwarenessCounts {
  std::uint64_t pred_reduced = 0;
  std::uint64_t pred_hits = 0;  // reduced pred edges found in closed gold
  std::uint64_t gold_reduced = 0;
  std::uint64_t gold_hits = 0;  // reduced gold edges found in closed pred

  void add(const AwarenessCounts& other);
};

struct PrfTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Temporal-awareness counts: both graphs are closed, vague edges dropped,
/// and each side reduced to a non-redundant edge set before intersecting
/// with the other side's closure. Requires both graphs consistent.
AwarenessCounts awareness_counts(const TemporalGraph& pred,
                                 const TemporalGraph& gold,
                                 const CompositionTable& table);

PrfTriple awareness(const TemporalGraph& pred, const TemporalGraph& gold,
                    const CompositionTable& table);

/// Non-redundant generating set of close(graph): edges are visited in sorted
/// order and dropped whenever the closure of the remainder still derives
/// them. Deterministic; minimality is not guaranteed (reductions are not
/// unique).
TemporalGraph reduce(const TemporalGraph& graph, const CompositionTable& table);

/// The tau-threshold predictor over KB ratios: before when eta_b exceeds
/// tau, after when eta_a does, vague otherwise.
std::vector<Relation> threshold_predict(
    const KnowledgeBase& kb,
    const std::vector<std::pair<std::string, std::string>>& pairs, double tau);

std::vector<Relation> constant_baseline(std::size_t pair_count, Relation label);

struct CausalRecord {
  int source = 0;
  int target = 0;
  std::string label;  // "causes" or "caused_by"
};

/// Causal annotations reinterpreted as temporal gold: a cause precedes its
/// effect.
std::vector<GoldRelation> causal_to_temprel(
    const std::vector<CausalRecord>& records);

/// McNemar's test over two systems' per-example correctness: exact two-sided
/// binomial on the discordant pairs when they number under 25, otherwise the
/// continuity-corrected chi-square approximation.
double mcnemar(const std::vector<bool>& correct_a,
               const std::vector<bool>& correct_b);

}  // namespace temprel
