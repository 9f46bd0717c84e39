#pragma once

#include "temprel/composition.hpp"
#include "temprel/relations.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace temprel {

/// A labeled temporal graph over event ids. Nodes are kept in text-appearance
/// order (ascending ids). Exactly one orientation of each labeled pair is
/// stored, the one with the smaller id first; querying the other orientation
/// returns the reverse label.
class TemporalGraph {
 public:
  using EdgeMap = std::map<std::pair<int, int>, Relation>;

  TemporalGraph() = default;
  explicit TemporalGraph(std::vector<int> nodes);

  const std::vector<int>& nodes() const { return nodes_; }
  const EdgeMap& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_node(int id) const;
  bool has_edge(int m, int n) const;

  /// Label of (m, n); reversed when m > n. Throws std::out_of_range when the
  /// pair is unlabeled.
  Relation label(int m, int n) const;
  std::optional<Relation> try_label(int m, int n) const;

  /// Adds a label for an unlabeled pair of distinct known nodes. Throws
  /// ValidationError when the pair already carries a label or a node is
  /// unknown.
  void add_edge(int m, int n, Relation r);

  bool operator==(const TemporalGraph&) const = default;

 private:
  std::vector<int> nodes_;
  EdgeMap edges_;
};

/// One inconsistent triangle, reported once per node triple (a < b < c).
/// singleton_composition marks triples where some failing check had a
/// one-element composition set, i.e. a hard transitivity breach.
struct Violation {
  int a = 0;
  int b = 0;
  int c = 0;
  bool singleton_composition = false;

  bool operator==(const Violation&) const = default;
};

/// Every triangle whose three stored labels fail a composition membership
/// check. A vague label asserts nothing: it widens compositions it feeds and
/// never violates a constraint itself. An empty result means the graph is
/// (path-)consistent.
std::vector<Violation> check_consistent(const TemporalGraph& graph,
                                        const CompositionTable& table);

/// Transitive closure: repeatedly adds the forced label to any unlabeled pair
/// whose two neighbors compose to a non-vague singleton. Existing labels are
/// never overwritten; a forced singleton that contradicts an existing label
/// raises ConflictError. Triangles are visited in sorted node order and
/// passes repeat to the fixpoint, so the result is deterministic.
TemporalGraph close(const TemporalGraph& graph, const CompositionTable& table);

}  // namespace temprel
