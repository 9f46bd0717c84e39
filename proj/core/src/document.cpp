#include "temprel/document.hpp"

#include "temprel/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace temprel {

const Event& Document::event_by_id(int id) const {
  auto it = std::lower_bound(
      events.begin(), events.end(), id,
      [](const Event& e, int value) { return e.id < value; });
  if (it == events.end() || it->id != id) {
    throw ValidationError("document " + doc_id + " has no event with id " +
                          std::to_string(id));
  }
  return *it;
}

std::string Document::frame_lemma(const std::string& frame) {
  auto dot = frame.rfind('.');
  return dot == std::string::npos ? frame : frame.substr(0, dot);
}

std::size_t Document::flat_position(const Event& e) const {
  std::size_t offset = 0;
  for (int s = 0; s < e.sentence; ++s) {
    offset += sentences[static_cast<std::size_t>(s)].size();
  }
  return offset + static_cast<std::size_t>(e.token);
}

std::string_view to_string(DistanceBucket bucket) {
  return bucket == DistanceBucket::kSame ? "Same" : "Neighbor";
}

int sentence_distance(const Document& doc, int source_id, int target_id) {
  return std::abs(doc.event_by_id(target_id).sentence -
                  doc.event_by_id(source_id).sentence);
}

std::vector<CandidatePair> candidate_pairs(const Document& doc) {
  std::vector<CandidatePair> pairs;
  const std::size_t n = doc.events.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int dist =
          std::abs(doc.events[j].sentence - doc.events[i].sentence);
      if (dist > 1) continue;
      pairs.push_back({doc.events[i].id, doc.events[j].id,
                       dist == 0 ? DistanceBucket::kSame
                                 : DistanceBucket::kNeighbor});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return std::pair{a.source, a.target} < std::pair{b.source, b.target};
  });
  return pairs;
}

}  // namespace temprel
