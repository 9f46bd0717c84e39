#include "temprel/inference.hpp"

#include "temprel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace temprel {

namespace {

std::vector<int> event_ids(const Document& doc) {
  std::vector<int> ids;
  ids.reserve(doc.events.size());
  for (const Event& event : doc.events) ids.push_back(event.id);
  return ids;
}

}  // namespace

TemporalGraph infer_greedy(const Document& doc, const LexicalResource& lex,
                           const PerceptronModel& model_same,
                           const PerceptronModel& model_neighbor,
                           const CompositionTable& table, GreedyStats* stats) {
  GreedyStats local;
  TemporalGraph graph(event_ids(doc));
  const std::vector<CandidatePair> pairs = candidate_pairs(doc);

  for (DistanceBucket bucket : {DistanceBucket::kSame, DistanceBucket::kNeighbor}) {
    const PerceptronModel& model =
        bucket == DistanceBucket::kSame ? model_same : model_neighbor;
    for (const CandidatePair& pair : pairs) {
      if (pair.bucket != bucket) continue;
      if (graph.has_edge(pair.source, pair.target)) continue;
      const FeatureVector fv = extract(doc, doc.event_by_id(pair.source),
                                       doc.event_by_id(pair.target), lex);
      const Relation predicted = model.predict(fv).label;
      if (predicted == Relation::kVague) continue;  // asserts nothing

      TemporalGraph candidate = graph;
      candidate.add_edge(pair.source, pair.target, predicted);
      try {
        candidate = close(candidate, table);
      } catch (const ConflictError&) {
        ++local.conflict_skips;
        continue;
      }
      local.classifier_edges += 1;
      local.closure_edges += candidate.edge_count() - graph.edge_count() - 1;
      graph = std::move(candidate);
    }
  }

  // Committed states are always closed and conflict-free, so every pair that
  // composition forces is already labeled; the leftovers carry no constraint
  // and take vague.
  for (const CandidatePair& pair : pairs) {
    if (!graph.has_edge(pair.source, pair.target)) {
      graph.add_edge(pair.source, pair.target, Relation::kVague);
      ++local.vague_fills;
    }
  }

  if (stats) *stats = local;
  return graph;
}

namespace {

struct SolverVariable {
  int source = 0;
  int target = 0;
  std::array<double, kRelationCount> coefficients{};
};

struct Triangle {
  // Indices into the variable array; ab, bc, ac of a node triple a < b < c.
  std::size_t ab, bc, ac;
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpProblem& problem, const CompositionTable& table)
      : table_(table), max_nodes_(problem.max_nodes) {
    variables_.reserve(problem.pairs.size());
    for (const PairVariable& pair : problem.pairs) {
      SolverVariable var;
      var.source = pair.source;
      var.target = pair.target;
      for (int r = 0; r < kRelationCount; ++r) {
        const auto idx = static_cast<std::size_t>(r);
        var.coefficients[idx] =
            pair.scores[idx] + problem.lambda * pair.priors[idx];
      }
      variables_.push_back(var);
    }
    order_variables();
    collect_triangles();
  }

  Assignment solve() {
    domains_.assign(variables_.size(), RelationSet::full());
    chosen_.assign(variables_.size(), Relation::kVague);
    incumbent_value_ = -std::numeric_limits<double>::infinity();
    budget_exhausted_ = false;
    descend(0, 0.0);

    Assignment out;
    out.objective = incumbent_value_;
    out.optimal = !budget_exhausted_;
    out.nodes_explored = nodes_;
    for (std::size_t v = 0; v < variables_.size(); ++v) {
      out.labels[{variables_[v].source, variables_[v].target}] =
          incumbent_labels_[v];
    }
    return out;
  }

 private:
  // Decide high-contrast pairs first: large gap between the best and second
  // best coefficient means a wrong branch is cut quickly.
  void order_variables() {
    std::vector<std::size_t> order(variables_.size());
    std::iota(order.begin(), order.end(), 0);
    auto gap = [this](std::size_t v) {
      std::array<double, kRelationCount> c = variables_[v].coefficients;
      std::sort(c.begin(), c.end(), std::greater<>());
      return c[0] - c[1];
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       const double ga = gap(a), gb = gap(b);
                       if (ga != gb) return ga > gb;
                       return std::pair{variables_[a].source,
                                        variables_[a].target} <
                              std::pair{variables_[b].source,
                                        variables_[b].target};
                     });
    std::vector<SolverVariable> reordered;
    reordered.reserve(order.size());
    for (std::size_t v : order) reordered.push_back(variables_[v]);
    variables_ = std::move(reordered);
  }

  void collect_triangles() {
    std::map<std::pair<int, int>, std::size_t> index;
    for (std::size_t v = 0; v < variables_.size(); ++v) {
      index[{variables_[v].source, variables_[v].target}] = v;
    }
    std::vector<int> nodes;
    for (const SolverVariable& var : variables_) {
      nodes.push_back(var.source);
      nodes.push_back(var.target);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        auto ab = index.find({nodes[i], nodes[j]});
        if (ab == index.end()) continue;
        for (std::size_t k = j + 1; k < nodes.size(); ++k) {
          auto bc = index.find({nodes[j], nodes[k]});
          auto ac = index.find({nodes[i], nodes[k]});
          if (bc == index.end() || ac == index.end()) continue;
          triangles_.push_back({ab->second, bc->second, ac->second});
        }
      }
    }
  }

  // Labels of the undecided edge of a triangle compatible with the two
  // decided ones, via the three membership checks of a labeled triangle.
  RelationSet consistent_labels(const Triangle& tri, std::size_t undecided,
                                Relation rab, Relation rbc,
                                Relation rac) const {
    RelationSet allowed;
    for (Relation candidate : kAllRelations) {
      Relation a = rab, b = rbc, c = rac;
      if (undecided == tri.ab) a = candidate;
      if (undecided == tri.bc) b = candidate;
      if (undecided == tri.ac) c = candidate;
      const bool ok = table_.compose(a, b).contains(c) &&
                      table_.compose(c, reverse(b)).contains(a) &&
                      table_.compose(reverse(a), c).contains(b);
      if (ok) allowed.add(candidate);
    }
    return allowed;
  }

  double optimistic_bound(std::size_t depth, double value) const {
    for (std::size_t v = depth; v < variables_.size(); ++v) {
      double best = -std::numeric_limits<double>::infinity();
      for (Relation r : kAllRelations) {
        if (!domains_[v].contains(r)) continue;
        best = std::max(best,
                        variables_[v].coefficients[static_cast<std::size_t>(
                            index_of(r))]);
      }
      value += best;
    }
    return value;
  }

  void descend(std::size_t depth, double value) {
    if (budget_exhausted_) return;
    if (depth == variables_.size()) {
      if (value > incumbent_value_) {
        incumbent_value_ = value;
        incumbent_labels_ = chosen_;
      }
      return;
    }
    if (max_nodes_ && nodes_ >= max_nodes_) {
      // Budget exhausted before the first leaf: fall back to the all-vague
      // assignment, which no triangle constraint can exclude.
      if (incumbent_labels_.empty()) adopt_all_vague();
      budget_exhausted_ = true;
      return;
    }
    ++nodes_;

    // Try labels by decreasing coefficient, canonical label order on ties.
    std::array<int, kRelationCount> label_order;
    std::iota(label_order.begin(), label_order.end(), 0);
    const auto& coeff = variables_[depth].coefficients;
    std::stable_sort(label_order.begin(), label_order.end(),
                     [&](int a, int b) {
                       return coeff[static_cast<std::size_t>(a)] >
                              coeff[static_cast<std::size_t>(b)];
                     });

    for (int label_index : label_order) {
      const auto label = static_cast<Relation>(label_index);
      if (!domains_[depth].contains(label)) continue;
      const double next_value =
          value + coeff[static_cast<std::size_t>(label_index)];
      chosen_[depth] = label;

      // Forward-check every triangle whose last undecided edge is not yet
      // fixed, narrowing its domain; undo on backtrack.
      std::vector<std::pair<std::size_t, RelationSet>> saved;
      bool dead_end = false;
      for (const Triangle& tri : triangles_) {
        std::size_t undecided = variables_.size();
        int decided = 0;
        for (std::size_t edge : {tri.ab, tri.bc, tri.ac}) {
          if (edge <= depth) {
            ++decided;
          } else {
            undecided = edge;
          }
        }
        if (decided != 2) continue;
        const RelationSet allowed = consistent_labels(
            tri, undecided, chosen_[tri.ab], chosen_[tri.bc], chosen_[tri.ac]);
        const RelationSet narrowed = domains_[undecided] & allowed;
        if (narrowed == domains_[undecided]) continue;
        saved.emplace_back(undecided, domains_[undecided]);
        domains_[undecided] = narrowed;
        if (narrowed.empty()) {
          dead_end = true;
          break;
        }
      }

      if (!dead_end && optimistic_bound(depth + 1, next_value) > incumbent_value_) {
        descend(depth + 1, next_value);
      }

      for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
        domains_[it->first] = it->second;
      }
      if (budget_exhausted_) return;
    }
  }

  void adopt_all_vague() {
    double value = 0.0;
    for (const SolverVariable& var : variables_) {
      value += var.coefficients[static_cast<std::size_t>(
          index_of(Relation::kVague))];
    }
    incumbent_value_ = value;
    incumbent_labels_.assign(variables_.size(), Relation::kVague);
  }

  const CompositionTable& table_;
  std::vector<SolverVariable> variables_;
  std::vector<Triangle> triangles_;
  std::vector<RelationSet> domains_;
  std::vector<Relation> chosen_;
  std::vector<Relation> incumbent_labels_;
  double incumbent_value_ = 0.0;
  std::uint64_t nodes_ = 0;
  std::uint64_t max_nodes_ = 0;
  bool budget_exhausted_ = false;
};

}  // namespace

Assignment infer_ilp(const IlpProblem& problem, const CompositionTable& table) {
  constexpr double kSumTolerance = 1e-9;
  std::set<std::pair<int, int>> seen;
  for (const PairVariable& pair : problem.pairs) {
    if (pair.source >= pair.target) {
      throw ValidationError("pair variables must be given in text order");
    }
    if (!seen.insert({pair.source, pair.target}).second) {
      throw ValidationError("duplicate pair variable");
    }
    const double score_sum =
        std::accumulate(pair.scores.begin(), pair.scores.end(), 0.0);
    const double prior_sum =
        std::accumulate(pair.priors.begin(), pair.priors.end(), 0.0);
    if (std::abs(score_sum - 1.0) > kSumTolerance ||
        std::abs(prior_sum - 1.0) > kSumTolerance) {
      throw ValidationError("pair scores and priors must each sum to one");
    }
  }
  if (problem.lambda < 0.0) {
    throw ValidationError("lambda must be non-negative");
  }
  if (problem.pairs.empty()) return Assignment{};
  return BranchAndBound(problem, table).solve();
}

IlpProblem build_problem(const Document& doc, const LexicalResource& lex,
                         const PerceptronModel& model_same,
                         const PerceptronModel& model_neighbor,
                         const KnowledgeBase& kb, double lambda) {
  IlpProblem problem;
  problem.lambda = lambda;
  for (const CandidatePair& pair : candidate_pairs(doc)) {
    const Event& e1 = doc.event_by_id(pair.source);
    const Event& e2 = doc.event_by_id(pair.target);
    const PerceptronModel& model = pair.bucket == DistanceBucket::kSame
                                       ? model_same
                                       : model_neighbor;
    PairVariable var;
    var.source = pair.source;
    var.target = pair.target;
    var.scores = model.predict(extract(doc, e1, e2, lex)).scores;
    var.priors = kb.prior_distribution(e1.frame, e2.frame).probs;
    problem.pairs.push_back(std::move(var));
  }
  return problem;
}

TemporalGraph assignment_graph(const Document& doc,
                               const Assignment& assignment) {
  TemporalGraph graph(event_ids(doc));
  for (const auto& [pair, relation] : assignment.labels) {
    graph.add_edge(pair.first, pair.second, relation);
  }
  return graph;
}

}  // namespace temprel
