#include "temprel/graph.hpp"

#include "temprel/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace temprel {

TemporalGraph::TemporalGraph(std::vector<int> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  auto dup = std::adjacent_find(nodes_.begin(), nodes_.end());
  if (dup != nodes_.end()) {
    throw ValidationError("duplicate node id " + std::to_string(*dup));
  }
}

bool TemporalGraph::has_node(int id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

bool TemporalGraph::has_edge(int m, int n) const {
  if (m > n) std::swap(m, n);
  return edges_.count({m, n}) > 0;
}

Relation TemporalGraph::label(int m, int n) const {
  auto r = try_label(m, n);
  if (!r) {
    throw std::out_of_range("no label for pair (" + std::to_string(m) + ", " +
                            std::to_string(n) + ")");
  }
  return *r;
}

std::optional<Relation> TemporalGraph::try_label(int m, int n) const {
  const bool flipped = m > n;
  if (flipped) std::swap(m, n);
  auto it = edges_.find({m, n});
  if (it == edges_.end()) return std::nullopt;
  return flipped ? reverse(it->second) : it->second;
}

void TemporalGraph::add_edge(int m, int n, Relation r) {
  if (m == n) throw ValidationError("self edge on node " + std::to_string(m));
  if (!has_node(m) || !has_node(n)) {
    throw ValidationError("edge references unknown node (" + std::to_string(m) +
                          ", " + std::to_string(n) + ")");
  }
  if (m > n) {
    std::swap(m, n);
    r = reverse(r);
  }
  auto [it, inserted] = edges_.emplace(std::pair{m, n}, r);
  if (!inserted) {
    throw ValidationError("pair (" + std::to_string(m) + ", " +
                          std::to_string(n) + ") is already labeled");
  }
}

namespace {

// The three independent membership checks of a fully labeled triangle
// a < b < c. The remaining orientations are mirrors under the reversal
// symmetry of the composition table.
struct TriangleCheck {
  Relation via_r1;
  Relation via_r2;
  Relation target;
};

std::array<TriangleCheck, 3> triangle_checks(Relation rab, Relation rbc,
                                             Relation rac) {
  return {{
      {rab, rbc, rac},                    // (a,b) o (b,c) vs (a,c)
      {rac, reverse(rbc), rab},           // (a,c) o (c,b) vs (a,b)
      {reverse(rab), rac, rbc},           // (b,a) o (a,c) vs (b,c)
  }};
}

}  // namespace

std::vector<Violation> check_consistent(const TemporalGraph& graph,
                                        const CompositionTable& table) {
  std::vector<Violation> out;
  const auto& nodes = graph.nodes();
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto rab = graph.try_label(nodes[i], nodes[j]);
      if (!rab) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        auto rbc = graph.try_label(nodes[j], nodes[k]);
        auto rac = graph.try_label(nodes[i], nodes[k]);
        if (!rbc || !rac) continue;
        bool violated = false;
        bool singleton = false;
        for (const auto& check : triangle_checks(*rab, *rbc, *rac)) {
          // A vague label asserts nothing, so it cannot itself violate a
          // composition constraint.
          if (check.target == Relation::kVague) continue;
          RelationSet allowed = table.compose(check.via_r1, check.via_r2);
          if (!allowed.contains(check.target)) {
            violated = true;
            singleton = singleton || allowed.size() == 1;
          }
        }
        if (violated) {
          out.push_back({nodes[i], nodes[j], nodes[k], singleton});
        }
      }
    }
  }
  return out;
}

namespace {

// Derives the third edge of triangle (i, j, k) through the given chain when
// the two chain edges are labeled, the target is not, and the composition is
// a non-vague singleton. Returns true when an edge was added.
bool derive_edge(TemporalGraph& g, const CompositionTable& table, int from,
                 int via, int to) {
  auto r1 = g.try_label(from, via);
  auto r2 = g.try_label(via, to);
  if (!r1 || !r2) return false;
  RelationSet composed = table.compose(*r1, *r2);
  if (composed.size() != 1) return false;
  const Relation forced = composed.sole_member();
  if (forced == Relation::kVague) return false;
  auto existing = g.try_label(from, to);
  if (existing) {
    // A vague label commits to nothing and is left in place; only a definite
    // disagreement is a genuine conflict.
    if (*existing != forced && *existing != Relation::kVague) {
      throw ConflictError("closure forces " + std::string(to_string(forced)) +
                          " on (" + std::to_string(from) + ", " +
                          std::to_string(to) + ") already labeled " +
                          std::string(to_string(*existing)));
    }
    return false;
  }
  g.add_edge(from, to, forced);
  return true;
}

}  // namespace

TemporalGraph close(const TemporalGraph& graph, const CompositionTable& table) {
  TemporalGraph closed = graph;
  const auto& nodes = closed.nodes();
  const std::size_t n = nodes.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          const int a = nodes[i], b = nodes[j], c = nodes[k];
          changed |= derive_edge(closed, table, a, b, c);
          changed |= derive_edge(closed, table, a, c, b);
          changed |= derive_edge(closed, table, b, a, c);
        }
      }
    }
  }
  return closed;
}

}  // namespace temprel
