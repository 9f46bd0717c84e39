#pragma once

#include "temprel/relations.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace temprel {

struct Token {
  std::string text;
  std::string pos;
  std::string lemma;

  bool operator==(const Token&) const = default;
};

/// A verb frame occurrence anchored at a sentence/token position.
struct Event {
  int id = 0;
  int sentence = 0;
  int token = 0;
  /// Disambiguated verb frame, lemma plus two-digit sense ("explode.01").
  std::string frame;
  /// Optional categorical attributes (tense, aspect, modality, polarity).
  std::map<std::string, std::string> properties;

  bool operator==(const Event&) const = default;
};

struct GoldRelation {
  int source = 0;
  int target = 0;
  Relation label = Relation::kVague;

  bool operator==(const GoldRelation&) const = default;
};

struct Document {
  std::string doc_id;
  std::vector<std::vector<Token>> sentences;
  std::vector<Event> events;  // ascending ids, text-appearance order
  std::vector<GoldRelation> gold;

  const Event& event_by_id(int id) const;

  /// Lemma part of the event's frame (everything before the final dot).
  static std::string frame_lemma(const std::string& frame);

  /// Position of an event in the document's flattened token sequence.
  std::size_t flat_position(const Event& e) const;

  bool operator==(const Document&) const = default;
};

enum class DistanceBucket { kSame, kNeighbor };

std::string_view to_string(DistanceBucket bucket);

struct CandidatePair {
  int source = 0;
  int target = 0;
  DistanceBucket bucket = DistanceBucket::kSame;

  bool operator==(const CandidatePair&) const = default;
};

/// Sentence distance between two events of the same document.
int sentence_distance(const Document& doc, int source_id, int target_id);

/// All ordered event pairs (m, n) with m < n and sentence distance at most
/// one, sorted by (m, n).
std::vector<CandidatePair> candidate_pairs(const Document& doc);

}  // namespace temprel
