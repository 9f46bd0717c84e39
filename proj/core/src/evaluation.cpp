#include "temprel/evaluation.hpp"

#include "temprel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace temprel {

namespace {

double safe_ratio(std::uint64_t numerator, std::uint64_t denominator) {
  return denominator == 0 ? 0.0
                          : static_cast<double>(numerator) /
                                static_cast<double>(denominator);
}

double harmonic(double p, double r) {
  return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

}  // namespace

void ScoreCounts::add(const ScoreCounts& other) {
  for (std::size_t g = 0; g < confusion.size(); ++g) {
    for (std::size_t p = 0; p < confusion[g].size(); ++p) {
      confusion[g][p] += other.confusion[g][p];
    }
  }
}

ScoreCounts score_counts(const TemporalGraph& pred, const TemporalGraph& gold) {
  if (pred.nodes() != gold.nodes()) {
    throw NodeMismatch("prediction and gold graphs disagree on the node set");
  }
  ScoreCounts counts;
  for (const auto& [pair, gold_label] : gold.edges()) {
    const Relation predicted =
        pred.try_label(pair.first, pair.second).value_or(Relation::kVague);
    ++counts.confusion[static_cast<std::size_t>(index_of(gold_label))]
                      [static_cast<std::size_t>(index_of(predicted))];
  }
  return counts;
}

EvalReport report_from_counts(const ScoreCounts& counts) {
  EvalReport report;
  report.confusion = counts.confusion;

  const auto vague = static_cast<std::size_t>(index_of(Relation::kVague));
  std::uint64_t correct = 0, predicted_nonvague = 0, gold_nonvague = 0;
  for (std::size_t g = 0; g < kRelationCount; ++g) {
    for (std::size_t p = 0; p < kRelationCount; ++p) {
      const std::uint64_t n = counts.confusion[g][p];
      if (p != vague) predicted_nonvague += n;
      if (g != vague) gold_nonvague += n;
      if (g == p && p != vague) correct += n;
    }
  }
  report.precision = safe_ratio(correct, predicted_nonvague);
  report.recall = safe_ratio(correct, gold_nonvague);
  report.f1 = harmonic(report.precision, report.recall);

  for (std::size_t r = 0; r < kRelationCount; ++r) {
    std::uint64_t gold_total = 0, pred_total = 0;
    for (std::size_t other = 0; other < kRelationCount; ++other) {
      gold_total += counts.confusion[r][other];
      pred_total += counts.confusion[other][r];
    }
    LabelMetrics& metrics = report.per_label[r];
    metrics.precision = safe_ratio(counts.confusion[r][r], pred_total);
    metrics.recall = safe_ratio(counts.confusion[r][r], gold_total);
    metrics.f1 = harmonic(metrics.precision, metrics.recall);
  }
  return report;
}

EvalReport score(const TemporalGraph& pred, const TemporalGraph& gold) {
  return report_from_counts(score_counts(pred, gold));
}

namespace {

TemporalGraph strip_vague(const TemporalGraph& graph) {
  TemporalGraph out(graph.nodes());
  for (const auto& [pair, relation] : graph.edges()) {
    if (relation != Relation::kVague) {
      out.add_edge(pair.first, pair.second, relation);
    }
  }
  return out;
}

void require_consistent(const TemporalGraph& graph,
                        const CompositionTable& table, const char* which) {
  if (!check_consistent(graph, table).empty()) {
    throw ConflictError(std::string(which) +
                        " graph is inconsistent; awareness is undefined");
  }
}

}  // namespace

TemporalGraph reduce(const TemporalGraph& graph, const CompositionTable& table) {
  TemporalGraph current = close(strip_vague(graph), table);
  // Sorted edge order; each drop keeps the closure intact, so the surviving
  // set generates close(graph) exactly.
  std::vector<std::pair<int, int>> order;
  for (const auto& [pair, relation] : current.edges()) order.push_back(pair);
  for (const auto& pair : order) {
    TemporalGraph without(current.nodes());
    for (const auto& [other, relation] : current.edges()) {
      if (other != pair) without.add_edge(other.first, other.second, relation);
    }
    const TemporalGraph closed = close(without, table);
    if (closed.try_label(pair.first, pair.second) ==
        current.try_label(pair.first, pair.second)) {
      current = std::move(without);
    }
  }
  return current;
}

AwarenessCounts awareness_counts(const TemporalGraph& pred,
                                 const TemporalGraph& gold,
                                 const CompositionTable& table) {
  require_consistent(pred, table, "prediction");
  require_consistent(gold, table, "gold");

  const TemporalGraph closed_pred = close(strip_vague(pred), table);
  const TemporalGraph closed_gold = close(strip_vague(gold), table);
  const TemporalGraph reduced_pred = reduce(pred, table);
  const TemporalGraph reduced_gold = reduce(gold, table);

  auto hits = [](const TemporalGraph& reduced, const TemporalGraph& closed) {
    std::uint64_t n = 0;
    for (const auto& [pair, relation] : reduced.edges()) {
      if (closed.try_label(pair.first, pair.second) == relation) ++n;
    }
    return n;
  };

  AwarenessCounts counts;
  counts.pred_reduced = reduced_pred.edge_count();
  counts.pred_hits = hits(reduced_pred, closed_gold);
  counts.gold_reduced = reduced_gold.edge_count();
  counts.gold_hits = hits(reduced_gold, closed_pred);
  return counts;
}

void AwarenessCounts::add(const AwarenessCounts& other) {
  pred_reduced += other.pred_reduced;
  pred_hits += other.pred_hits;
  gold_reduced += other.gold_reduced;
  gold_hits += other.gold_hits;
}

PrfTriple awareness(const TemporalGraph& pred, const TemporalGraph& gold,
                    const CompositionTable& table) {
  const AwarenessCounts counts = awareness_counts(pred, gold, table);
  PrfTriple out;
  out.precision = safe_ratio(counts.pred_hits, counts.pred_reduced);
  out.recall = safe_ratio(counts.gold_hits, counts.gold_reduced);
  out.f1 = harmonic(out.precision, out.recall);
  return out;
}

std::vector<Relation> threshold_predict(
    const KnowledgeBase& kb,
    const std::vector<std::pair<std::string, std::string>>& pairs, double tau) {
  if (tau < 0.5 || tau >= 1.0) {
    throw ValidationError("tau must lie in [0.5, 1)");
  }
  std::vector<Relation> out;
  out.reserve(pairs.size());
  for (const auto& [v1, v2] : pairs) {
    const PairPrior prior = kb.eta(v1, v2);
    if (prior.eta_before > tau) {
      out.push_back(Relation::kBefore);
    } else if (prior.eta_after > tau) {
      out.push_back(Relation::kAfter);
    } else {
      out.push_back(Relation::kVague);
    }
  }
  return out;
}

std::vector<Relation> constant_baseline(std::size_t pair_count, Relation label) {
  return std::vector<Relation>(pair_count, label);
}

std::vector<GoldRelation> causal_to_temprel(
    const std::vector<CausalRecord>& records) {
  std::vector<GoldRelation> out;
  out.reserve(records.size());
  for (const CausalRecord& record : records) {
    Relation label;
    if (record.label == "causes") {
      label = Relation::kBefore;
    } else if (record.label == "caused_by") {
      label = Relation::kAfter;
    } else {
      throw UnknownLabel("unknown causal label '" + record.label + "'");
    }
    out.push_back({record.source, record.target, label});
  }
  return out;
}

double mcnemar(const std::vector<bool>& correct_a,
               const std::vector<bool>& correct_b) {
  if (correct_a.size() != correct_b.size()) {
    throw LengthMismatch("correctness vectors differ in length");
  }
  std::uint64_t b = 0, c = 0;
  for (std::size_t i = 0; i < correct_a.size(); ++i) {
    if (correct_a[i] && !correct_b[i]) ++b;
    if (!correct_a[i] && correct_b[i]) ++c;
  }
  const std::uint64_t n = b + c;
  if (n == 0) return 1.0;

  if (n < 25) {
    // Exact two-sided binomial under p = 1/2.
    const std::uint64_t k = std::min(b, c);
    double tail = 0.0;
    double log_half_n = -static_cast<double>(n) * std::log(2.0);
    for (std::uint64_t i = 0; i <= k; ++i) {
      double log_choose = std::lgamma(static_cast<double>(n) + 1.0) -
                          std::lgamma(static_cast<double>(i) + 1.0) -
                          std::lgamma(static_cast<double>(n - i) + 1.0);
      tail += std::exp(log_choose + log_half_n);
    }
    return std::min(1.0, 2.0 * tail);
  }

  const double diff = std::abs(static_cast<double>(b) - static_cast<double>(c));
  const double stat = (diff - 1.0) * (diff - 1.0) / static_cast<double>(n);
  // Survival function of chi-square with one degree of freedom.
  return std::erfc(std::sqrt(stat / 2.0));
}

}  // namespace temprel
