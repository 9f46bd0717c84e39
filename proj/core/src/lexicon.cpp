#include "temprel/lexicon.hpp"

#include "temprel/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace temprel {

std::string lowercase(std::string_view word) {
  std::string out(word);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
    return static_cast<char>(std::tolower(ch));
  });
  return out;
}

LexicalResource LexicalResource::defaults() {
  LexicalResource lex;
  lex.modal_verbs_ = {"will", "would", "can", "could", "may", "might"};
  lex.temporal_connectives_ = {"before", "after", "since"};
  lex.preposition_tags_ = {"IN", "TO"};
  return lex;
}

bool LexicalResource::frames_share_synonym_set(const std::string& lemma1,
                                               const std::string& lemma2) const {
  const std::string a = lowercase(lemma1);
  const std::string b = lowercase(lemma2);
  for (const auto& synset : synonym_sets_) {
    if (synset.count(a) && synset.count(b)) return true;
  }
  return false;
}

bool LexicalResource::is_derivation_pair(const std::string& lemma1,
                                         const std::string& lemma2) const {
  std::string a = lowercase(lemma1);
  std::string b = lowercase(lemma2);
  if (b < a) std::swap(a, b);
  return derivation_pairs_.count({a, b}) > 0;
}

bool LexicalResource::is_modal_verb(const std::string& word) const {
  return modal_verbs_.count(lowercase(word)) > 0;
}

bool LexicalResource::is_temporal_connective(const std::string& word) const {
  return temporal_connectives_.count(lowercase(word)) > 0;
}

bool LexicalResource::is_preposition_tag(const std::string& pos) const {
  return preposition_tags_.count(pos) > 0;
}

namespace {

// Strips a '#' comment and surrounding whitespace.
std::string clean_line(const std::string& line) {
  std::string out = line.substr(0, line.find('#'));
  auto begin = out.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = out.find_last_not_of(" \t\r");
  return out.substr(begin, end - begin + 1);
}

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream stream(line);
  std::string word;
  while (stream >> word) words.push_back(lowercase(word));
  return words;
}

std::set<std::string> split_commas(const std::string& value, bool lower) {
  std::set<std::string> out;
  std::string item;
  std::istringstream stream(value);
  while (std::getline(stream, item, ',')) {
    auto begin = item.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    auto end = item.find_last_not_of(" \t");
    item = item.substr(begin, end - begin + 1);
    out.insert(lower ? lowercase(item) : item);
  }
  return out;
}

template <typename LineHandler>
void for_each_line(const std::filesystem::path& file, LineHandler&& handler) {
  std::ifstream in(file);
  if (!in) return;  // missing files behave like empty ones
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string cleaned = clean_line(line);
    if (cleaned.empty()) continue;
    handler(cleaned, line_no);
  }
}

}  // namespace

LexicalResource load_lexical_resource(const std::filesystem::path& dir) {
  LexicalResource lex = LexicalResource::defaults();

  for_each_line(dir / "synonyms.txt",
                [&](const std::string& line, std::size_t line_no) {
                  auto words = split_whitespace(line);
                  if (words.empty()) {
                    throw ParseError("synonyms.txt:" + std::to_string(line_no) +
                                     ": empty synonym set");
                  }
                  lex.synonym_sets_.emplace_back(words.begin(), words.end());
                });

  for_each_line(dir / "derivations.txt",
                [&](const std::string& line, std::size_t line_no) {
                  auto words = split_whitespace(line);
                  if (words.size() != 2) {
                    throw ParseError("derivations.txt:" +
                                     std::to_string(line_no) +
                                     ": expected exactly two lemmas");
                  }
                  if (words[1] < words[0]) std::swap(words[0], words[1]);
                  lex.derivation_pairs_.insert({words[0], words[1]});
                });

  for_each_line(dir / "config.txt",
                [&](const std::string& line, std::size_t line_no) {
                  auto eq = line.find('=');
                  if (eq == std::string::npos) {
                    throw ParseError("config.txt:" + std::to_string(line_no) +
                                     ": expected key=value");
                  }
                  const std::string key = clean_line(line.substr(0, eq));
                  const std::string value = line.substr(eq + 1);
                  if (key == "modal_verbs") {
                    lex.modal_verbs_ = split_commas(value, /*lower=*/true);
                  } else if (key == "temporal_connectives") {
                    lex.temporal_connectives_ =
                        split_commas(value, /*lower=*/true);
                  } else if (key == "preposition_tags") {
                    lex.preposition_tags_ = split_commas(value, /*lower=*/false);
                  } else {
                    throw ParseError("config.txt:" + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
                  }
                });

  if (lex.modal_verbs_.empty() || lex.temporal_connectives_.empty() ||
      lex.preposition_tags_.empty()) {
    throw ParseError("config.txt: word lists must not be overridden to empty");
  }
  return lex;
}

}  // namespace temprel
