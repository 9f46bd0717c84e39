#include "temprel/corpus.hpp"

#include "temprel/errors.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace temprel {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& path,
                             const std::string& message) {
  throw ParseError(where + ": " + path + ": " + message);
}

[[noreturn]] void invalid(const std::string& where, const std::string& path,
                          const std::string& message) {
  throw ValidationError(where + ": " + path + ": " + message);
}

const json& require_field(const json& j, const char* key,
                          const std::string& where, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) {
    parse_fail(where, path, std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string require_string(const json& j, const char* key,
                           const std::string& where, const std::string& path) {
  const json& field = require_field(j, key, where, path);
  if (!field.is_string()) {
    parse_fail(where, path + "." + key, "expected a string");
  }
  return field.get<std::string>();
}

int require_int(const json& j, const char* key, const std::string& where,
                const std::string& path) {
  const json& field = require_field(j, key, where, path);
  if (!field.is_number_integer()) {
    parse_fail(where, path + "." + key, "expected an integer");
  }
  return field.get<int>();
}

bool valid_pos_tag(const std::string& pos) {
  if (pos.empty()) return false;
  for (unsigned char ch : pos) {
    if (std::islower(ch)) return false;
  }
  return true;
}

bool valid_frame(const std::string& frame) {
  auto dot = frame.rfind('.');
  if (dot == std::string::npos || dot == 0) return false;
  if (frame.size() != dot + 3) return false;
  return std::isdigit(static_cast<unsigned char>(frame[dot + 1])) &&
         std::isdigit(static_cast<unsigned char>(frame[dot + 2]));
}

}  // namespace

Document parse_document_line(const std::string& line, const std::string& where,
                             std::size_t* dropped_gold_pairs) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    parse_fail(where, "$", e.what());
  }
  if (!record.is_object()) parse_fail(where, "$", "expected a JSON object");

  Document doc;
  doc.doc_id = require_string(record, "doc_id", where, "$");

  const json& sentences = require_field(record, "sentences", where, "$");
  if (!sentences.is_array()) parse_fail(where, "$.sentences", "expected a list");
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const std::string spath = "$.sentences[" + std::to_string(si) + "]";
    const json& sentence = sentences[si];
    if (!sentence.is_array()) parse_fail(where, spath, "expected a list");
    std::vector<Token> tokens;
    for (std::size_t ti = 0; ti < sentence.size(); ++ti) {
      const std::string tpath = spath + "[" + std::to_string(ti) + "]";
      const json& tok = sentence[ti];
      if (!tok.is_object()) parse_fail(where, tpath, "expected an object");
      Token token;
      token.text = require_string(tok, "text", where, tpath);
      token.pos = require_string(tok, "pos", where, tpath);
      token.lemma = require_string(tok, "lemma", where, tpath);
      if (!valid_pos_tag(token.pos)) {
        invalid(where, tpath + ".pos",
                "POS tag must be non-empty and uppercase, got '" + token.pos +
                    "'");
      }
      if (token.lemma.empty()) {
        invalid(where, tpath + ".lemma", "lemma must be non-empty");
      }
      tokens.push_back(std::move(token));
    }
    doc.sentences.push_back(std::move(tokens));
  }

  const json& events = require_field(record, "events", where, "$");
  if (!events.is_array()) parse_fail(where, "$.events", "expected a list");
  for (std::size_t ei = 0; ei < events.size(); ++ei) {
    const std::string epath = "$.events[" + std::to_string(ei) + "]";
    const json& ev = events[ei];
    if (!ev.is_object()) parse_fail(where, epath, "expected an object");
    Event event;
    event.id = require_int(ev, "id", where, epath);
    event.sentence = require_int(ev, "sentence", where, epath);
    event.token = require_int(ev, "token", where, epath);
    event.frame = require_string(ev, "frame", where, epath);
    if (auto it = ev.find("properties"); it != ev.end()) {
      if (!it->is_object()) parse_fail(where, epath + ".properties", "expected an object");
      for (auto& [key, value] : it->items()) {
        if (!value.is_string()) {
          parse_fail(where, epath + ".properties." + key, "expected a string");
        }
        event.properties[key] = value.get<std::string>();
      }
    }
    if (!valid_frame(event.frame)) {
      invalid(where, epath + ".frame",
              "frame must be 'lemma.DD' with a two-digit sense, got '" +
                  event.frame + "'");
    }
    if (event.sentence < 0 ||
        event.sentence >= static_cast<int>(doc.sentences.size())) {
      invalid(where, epath + ".sentence", "sentence index out of range");
    }
    const auto& sent = doc.sentences[static_cast<std::size_t>(event.sentence)];
    if (event.token < 0 || event.token >= static_cast<int>(sent.size())) {
      invalid(where, epath + ".token", "token index out of range");
    }
    doc.events.push_back(std::move(event));
  }

  for (std::size_t i = 1; i < doc.events.size(); ++i) {
    const Event& prev = doc.events[i - 1];
    const Event& cur = doc.events[i];
    if (cur.id <= prev.id) {
      invalid(where, "$.events", "event ids must be unique and ascending");
    }
    if (std::pair{cur.sentence, cur.token} <=
        std::pair{prev.sentence, prev.token}) {
      invalid(where, "$.events",
              "event ids must follow text-appearance order");
    }
  }

  if (auto it = record.find("relations"); it != record.end()) {
    if (!it->is_array()) parse_fail(where, "$.relations", "expected a list");
    std::set<std::pair<int, int>> seen;
    for (std::size_t ri = 0; ri < it->size(); ++ri) {
      const std::string rpath = "$.relations[" + std::to_string(ri) + "]";
      const json& rel = (*it)[ri];
      if (!rel.is_object()) parse_fail(where, rpath, "expected an object");
      GoldRelation gold;
      gold.source = require_int(rel, "source", where, rpath);
      gold.target = require_int(rel, "target", where, rpath);
      const std::string label = require_string(rel, "label", where, rpath);
      auto parsed = relation_from_string(label);
      if (!parsed) {
        invalid(where, rpath + ".label", "unknown relation '" + label + "'");
      }
      gold.label = *parsed;
      if (gold.source >= gold.target) {
        invalid(where, rpath, "gold pairs require source id < target id");
      }
      const Event& source = doc.event_by_id(gold.source);
      const Event& target = doc.event_by_id(gold.target);
      if (!seen.insert({gold.source, gold.target}).second) {
        invalid(where, rpath, "duplicate gold pair");
      }
      if (std::abs(target.sentence - source.sentence) > 1) {
        if (dropped_gold_pairs) ++*dropped_gold_pairs;
        continue;
      }
      doc.gold.push_back(gold);
    }
  }
  return doc;
}

IngestResult ingest_corpus(std::istream& in, const std::string& source_name) {
  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    result.documents.push_back(
        parse_document_line(line, where, &result.dropped_gold_pairs));
  }
  return result;
}

IngestResult ingest_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open corpus file " + path.string());
  }
  return ingest_corpus(in, path.filename().string());
}

std::string serialize_document(const Document& doc) {
  json record;
  record["doc_id"] = doc.doc_id;
  json sentences = json::array();
  for (const auto& sentence : doc.sentences) {
    json tokens = json::array();
    for (const Token& token : sentence) {
      tokens.push_back(
          {{"lemma", token.lemma}, {"pos", token.pos}, {"text", token.text}});
    }
    sentences.push_back(std::move(tokens));
  }
  record["sentences"] = std::move(sentences);
  json events = json::array();
  for (const Event& event : doc.events) {
    json ev = {{"frame", event.frame},
               {"id", event.id},
               {"sentence", event.sentence},
               {"token", event.token}};
    if (!event.properties.empty()) {
      ev["properties"] = event.properties;
    }
    events.push_back(std::move(ev));
  }
  record["events"] = std::move(events);
  if (!doc.gold.empty()) {
    json relations = json::array();
    for (const GoldRelation& gold : doc.gold) {
      relations.push_back({{"label", std::string(to_string(gold.label))},
                           {"source", gold.source},
                           {"target", gold.target}});
    }
    record["relations"] = std::move(relations);
  }
  return record.dump();
}

void write_corpus(const std::vector<Document>& docs,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot open output file " + path.string());
  }
  for (const Document& doc : docs) {
    out << serialize_document(doc) << '\n';
  }
}

}  // namespace temprel
