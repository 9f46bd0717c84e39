#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace temprel {

/// Plain-text lexical knowledge backing the synonym, derivation, modal,
/// connective and preposition features. Lookups are case-insensitive on
/// lemmas.
class LexicalResource {
 public:
  /// Built-in word lists used whenever config.txt does not override them.
  static LexicalResource defaults();

  bool frames_share_synonym_set(const std::string& lemma1,
                                const std::string& lemma2) const;
  bool is_derivation_pair(const std::string& lemma1,
                          const std::string& lemma2) const;
  bool is_modal_verb(const std::string& word) const;
  bool is_temporal_connective(const std::string& word) const;
  bool is_preposition_tag(const std::string& pos) const;

  const std::vector<std::set<std::string>>& synonym_sets() const {
    return synonym_sets_;
  }
  const std::set<std::string>& modal_verbs() const { return modal_verbs_; }
  const std::set<std::string>& temporal_connectives() const {
    return temporal_connectives_;
  }
  const std::set<std::string>& preposition_tags() const {
    return preposition_tags_;
  }

  friend LexicalResource load_lexical_resource(
      const std::filesystem::path& dir);

 private:
  std::vector<std::set<std::string>> synonym_sets_;
  std::set<std::pair<std::string, std::string>> derivation_pairs_;
  std::set<std::string> modal_verbs_;
  std::set<std::string> temporal_connectives_;
  std::set<std::string> preposition_tags_;
};

/// Loads synonyms.txt, derivations.txt and config.txt from a directory.
/// synonyms.txt: one whitespace-separated synonym set per line.
/// derivations.txt: one lemma pair per line.
/// config.txt: key=value lines (modal_verbs, temporal_connectives,
/// preposition_tags; comma-separated values). '#' starts a comment. Missing
/// or empty files fall back to the defaults for the word lists.
LexicalResource load_lexical_resource(const std::filesystem::path& dir);

std::string lowercase(std::string_view word);

}  // namespace temprel
