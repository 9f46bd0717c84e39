#include "temprel/composition.hpp"

#include <vector>

namespace temprel {

Relation classify(const Interval& a, const Interval& b) {
  if (a.end < b.start) return Relation::kBefore;
  if (a.start > b.end) return Relation::kAfter;
  if (a.start < b.start && b.end < a.end) return Relation::kIncludes;
  if (b.start < a.start && a.end < b.end) return Relation::kIncluded;
  if (a.start == b.start && a.end == b.end) return Relation::kEqual;
  return Relation::kVague;
}

bool admits(Relation r, const Interval& a, const Interval& b) {
  if (r == Relation::kVague) return true;
  return classify(a, b) == r;
}

CompositionTable derive_composition_table() {
  // Six endpoints per triple need at most six distinct values; eight grid
  // levels cover every order type with room to spare.
  constexpr int kGrid = 8;
  std::vector<Interval> intervals;
  for (int s = 0; s < kGrid; ++s) {
    for (int e = s + 1; e < kGrid; ++e) {
      intervals.push_back({s, e});
    }
  }

  CompositionTable table;
  auto& entries = table.entries_;
  auto add = [&entries](Relation r1, Relation r2, Relation result) {
    entries[index_of(r1) * kRelationCount + index_of(r2)].add(result);
  };

  for (const Interval& a : intervals) {
    for (const Interval& b : intervals) {
      const Relation ab = classify(a, b);
      for (const Interval& c : intervals) {
        const Relation bc = classify(b, c);
        const Relation ac = classify(a, c);
        // Vague admits every configuration, so each witnessed triple also
        // feeds the vague row, the vague column, and the vague/vague cell.
        add(ab, bc, ac);
        add(Relation::kVague, bc, ac);
        add(ab, Relation::kVague, ac);
        add(Relation::kVague, Relation::kVague, ac);
      }
    }
  }
  return table;
}

}  // namespace temprel
