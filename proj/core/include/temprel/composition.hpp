#pragma once

#include "temprel/relations.hpp"

#include <array>

namespace temprel {

/// An interval with strictly positive duration (start < end). Only the order
/// type of the endpoints matters, so small integer grids are exact.
struct Interval {
  int start = 0;
  int end = 1;
};

/// The definite label realized by a concrete interval pair, or vague when the
/// configuration matches none of the five definite patterns (overlap, meet,
/// shared start or end).
Relation classify(const Interval& a, const Interval& b);

/// Whether label r admits the concrete configuration (a, b). For the five
/// definite labels this is the same as classify(a, b) == r; vague admits
/// everything.
bool admits(Relation r, const Interval& a, const Interval& b);

/// compose(r1, r2) for every ordered label pair: the set of labels realizable
/// on (a, c) by some interval triple with r1 admitting (a, b) and r2
/// admitting (b, c).
class CompositionTable {
 public:
  RelationSet compose(Relation r1, Relation r2) const {
    return entries_[index_of(r1) * kRelationCount + index_of(r2)];
  }

  friend CompositionTable derive_composition_table();

 private:
  std::array<RelationSet, kRelationCount * kRelationCount> entries_{};
};

/// Builds the table by exhausting interval triples over a small integer grid.
/// The grid has more levels than there are endpoints in a triple, so every
/// realizable endpoint order type is witnessed and the table is exact.
CompositionTable derive_composition_table();

}  // namespace temprel
