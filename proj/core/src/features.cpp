#include "temprel/features.hpp"

#include "temprel/errors.hpp"

#include <cstdlib>
#include <string>

namespace temprel {

namespace {

constexpr const char* kBosMarker = "⟨BOS⟩";
constexpr const char* kEosMarker = "⟨EOS⟩";

std::string distance_bucket(long dist) {
  const long d = std::labs(dist);
  if (d <= 2) return std::to_string(d);
  if (d <= 5) return "3-5";
  if (d <= 10) return "6-10";
  return ">10";
}

// POS window of three tokens on each side of the verb within its sentence.
// Lowercase side markers (l1..r3) describe the first event, uppercase ones
// the second. Missing positions emit a boundary marker instead of a tag.
void add_context_window(FeatureVector& fv, const Document& doc,
                        const Event& event, bool first_event) {
  const auto& sentence = doc.sentences[static_cast<std::size_t>(event.sentence)];
  const int size = static_cast<int>(sentence.size());
  for (int offset = 1; offset <= 3; ++offset) {
    const int left = event.token - offset;
    const int right = event.token + offset;
    const std::string l = first_event ? "l" : "L";
    const std::string r = first_event ? "r" : "R";
    const std::string left_tag =
        left >= 0 ? sentence[static_cast<std::size_t>(left)].pos : kBosMarker;
    const std::string right_tag =
        right < size ? sentence[static_cast<std::size_t>(right)].pos
                     : kEosMarker;
    fv["ctx:" + l + std::to_string(offset) + ":" + left_tag] = 1.0;
    fv["ctx:" + r + std::to_string(offset) + ":" + right_tag] = 1.0;
  }
}

// Nearest preceding preposition-tagged token in the verb's sentence. This is
// a shallow stand-in for the covering preposition phrase's head word.
void add_preposition(FeatureVector& fv, const Document& doc,
                     const Event& event, const LexicalResource& lex,
                     const std::string& prefix) {
  const auto& sentence = doc.sentences[static_cast<std::size_t>(event.sentence)];
  for (int i = event.token - 1; i >= 0; --i) {
    const Token& token = sentence[static_cast<std::size_t>(i)];
    if (lex.is_preposition_tag(token.pos)) {
      fv[prefix + lowercase(token.text)] = 1.0;
      return;
    }
  }
}

void add_properties(FeatureVector& fv, const Event& e1, const Event& e2) {
  for (const auto& [key, value] : e1.properties) {
    fv["prop:1:" + key + "=" + value] = 1.0;
  }
  for (const auto& [key, value] : e2.properties) {
    fv["prop:2:" + key + "=" + value] = 1.0;
  }
  for (const auto& [key, value] : e1.properties) {
    auto other = e2.properties.find(key);
    if (other == e2.properties.end()) continue;
    fv[(value == other->second ? "prop:same:" : "prop:diff:") + key] = 1.0;
  }
}

}  // namespace

FeatureVector extract(const Document& doc, const Event& e1, const Event& e2,
                      const LexicalResource& lex) {
  const std::size_t pos1 = doc.flat_position(e1);
  const std::size_t pos2 = doc.flat_position(e2);
  if (pos2 <= pos1) {
    throw ValidationError("event pair must be given in text order");
  }
  if (std::abs(e2.sentence - e1.sentence) > 1) {
    throw ValidationError("event pair exceeds sentence distance one");
  }

  FeatureVector fv;

  const Token& verb1 =
      doc.sentences[static_cast<std::size_t>(e1.sentence)]
                   [static_cast<std::size_t>(e1.token)];
  const Token& verb2 =
      doc.sentences[static_cast<std::size_t>(e2.sentence)]
                   [static_cast<std::size_t>(e2.token)];
  fv["pos1:" + verb1.pos] = 1.0;
  fv["pos2:" + verb2.pos] = 1.0;
  add_context_window(fv, doc, e1, /*first_event=*/true);
  add_context_window(fv, doc, e2, /*first_event=*/false);

  const long dist = static_cast<long>(pos2) - static_cast<long>(pos1);
  fv["dist:k"] = static_cast<double>(dist);
  fv["dist:" + distance_bucket(dist)] = 1.0;

  // Flatten once to scan the tokens strictly between the two mentions.
  std::size_t flat = 0;
  for (const auto& sentence : doc.sentences) {
    for (const Token& token : sentence) {
      if (flat > pos1 && flat < pos2) {
        const std::string word = lowercase(token.text);
        if (lex.is_modal_verb(word)) fv["modal:" + word] = 1.0;
        if (lex.is_temporal_connective(word)) fv["conn:" + word] = 1.0;
      }
      ++flat;
    }
  }

  const std::string lemma1 = Document::frame_lemma(e1.frame);
  const std::string lemma2 = Document::frame_lemma(e2.frame);
  if (lex.frames_share_synonym_set(lemma1, lemma2)) fv["syn:common"] = 1.0;
  if (lex.is_derivation_pair(lemma1, lemma2)) fv["deriv:common"] = 1.0;

  add_preposition(fv, doc, e1, lex, "prep1:");
  add_preposition(fv, doc, e2, lex, "prep2:");

  add_properties(fv, e1, e2);
  return fv;
}

}  // namespace temprel
