#include "temprel/corpus.hpp"
#include "temprel/document.hpp"
#include "temprel/errors.hpp"
#include "temprel/rng.hpp"

#include "support/fixtures.hpp"

#include "doctest.h"

#include <random>
#include <sstream>

using namespace temprel;

namespace {

const char* kSimpleDoc =
    R"({"doc_id":"d1","events":[{"frame":"explode.01","id":0,"sentence":0,"token":1},{"frame":"die.01","id":1,"sentence":0,"token":3}],"relations":[{"label":"before","source":0,"target":1}],"sentences":[[{"lemma":"a","pos":"DT","text":"A"},{"lemma":"explode","pos":"VBD","text":"exploded"},{"lemma":"and","pos":"CC","text":"and"},{"lemma":"die","pos":"VBD","text":"died"}]]})";

IngestResult ingest_string(const std::string& text) {
  std::istringstream in(text);
  return ingest_corpus(in, "test");
}

}  // namespace

TEST_CASE("ingest parses a one-document corpus") {
  const IngestResult result = ingest_string(std::string(kSimpleDoc) + "\n");
  REQUIRE(result.documents.size() == 1);
  const Document& doc = result.documents[0];
  CHECK(doc.doc_id == "d1");
  CHECK(doc.events.size() == 2);
  CHECK(doc.gold.size() == 1);
  CHECK(doc.gold[0].label == Relation::kBefore);
  CHECK(result.dropped_gold_pairs == 0);
}

TEST_CASE("a frame without a sense suffix is rejected") {
  std::string bad(kSimpleDoc);
  const auto at = bad.find("explode.01");
  bad.replace(at, 10, "explode.x1");
  CHECK_THROWS_AS(ingest_string(bad), ValidationError);
  bad.replace(at, 10, "explode");
  CHECK_THROWS_AS(ingest_string(bad), ValidationError);
}

TEST_CASE("malformed json reports the line") {
  try {
    ingest_string("{\"doc_id\":\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("test:1") != std::string::npos);
  }
}

TEST_CASE("lowercase POS tags and empty lemmas are invalid") {
  std::string bad(kSimpleDoc);
  bad.replace(bad.find("\"DT\""), 4, "\"dt\"");
  CHECK_THROWS_AS(ingest_string(bad), ValidationError);

  std::string empty_lemma(kSimpleDoc);
  empty_lemma.replace(empty_lemma.find("\"lemma\":\"a\""), 11, "\"lemma\":\"\"");
  CHECK_THROWS_AS(ingest_string(empty_lemma), ValidationError);
}

TEST_CASE("gold pairs farther than one sentence are dropped with a count") {
  // Three sentences, events in sentence 0 and 2.
  const char* text =
      R"({"doc_id":"d2","events":[{"frame":"run.01","id":0,"sentence":0,"token":0},{"frame":"hide.01","id":1,"sentence":2,"token":0}],"relations":[{"label":"before","source":0,"target":1}],"sentences":[[{"lemma":"run","pos":"VBD","text":"ran"}],[{"lemma":"x","pos":"NN","text":"x"}],[{"lemma":"hide","pos":"VBD","text":"hid"}]]})";
  const IngestResult result = ingest_string(text);
  CHECK(result.documents[0].gold.empty());
  CHECK(result.dropped_gold_pairs == 1);
}

TEST_CASE("gold pairs must be in text order and unique") {
  std::string reversed(kSimpleDoc);
  reversed.replace(reversed.find("\"source\":0,\"target\":1"), 21,
                   "\"source\":1,\"target\":0");
  CHECK_THROWS_AS(ingest_string(reversed), ValidationError);

  std::string duplicated(kSimpleDoc);
  const std::string pair = R"({"label":"before","source":0,"target":1})";
  duplicated.replace(duplicated.find(pair), pair.size(), pair + "," + pair);
  CHECK_THROWS_AS(ingest_string(duplicated), ValidationError);
}

TEST_CASE("event ids must follow text order") {
  std::string swapped(kSimpleDoc);
  // Swap the two event ids so id order disagrees with position order.
  swapped.replace(swapped.find("\"id\":0"), 6, "\"id\":9");
  CHECK_THROWS_AS(ingest_string(swapped), ValidationError);
}

TEST_CASE("candidate pairs cover same and neighboring sentences only") {
  Document doc;
  doc.doc_id = "d";
  doc.sentences = {{{"a", "VBD", "a"}, {"b", "VBD", "b"}, {"c", "VBD", "c"}}};
  doc.events = {{0, 0, 0, "a.01", {}}, {1, 0, 1, "b.01", {}},
                {2, 0, 2, "c.01", {}}};
  const auto same = candidate_pairs(doc);
  REQUIRE(same.size() == 3);
  for (const CandidatePair& pair : same) {
    CHECK(pair.bucket == DistanceBucket::kSame);
  }

  Document spread;
  spread.doc_id = "s";
  spread.sentences = {{{"a", "VBD", "a"}},
                      {{"b", "VBD", "b"}},
                      {{"x", "NN", "x"}},
                      {{"c", "VBD", "c"}}};
  spread.events = {{0, 0, 0, "a.01", {}}, {1, 1, 0, "b.01", {}},
                   {2, 3, 0, "c.01", {}}};
  const auto pairs = candidate_pairs(spread);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == CandidatePair{0, 1, DistanceBucket::kNeighbor});

  CHECK(candidate_pairs(Document{}).empty());
}

TEST_CASE("candidate pairs of generated documents obey the distance bound") {
  for (const Document& doc : testing::connective_corpus(25, 7)) {
    for (const CandidatePair& pair : candidate_pairs(doc)) {
      CHECK(pair.source < pair.target);
      const int dist = sentence_distance(doc, pair.source, pair.target);
      CHECK(dist <= 1);
      CHECK((pair.bucket == DistanceBucket::kSame) == (dist == 0));
    }
  }
}

TEST_CASE("ingest then serialize round-trips canonical input") {
  const IngestResult result = ingest_string(std::string(kSimpleDoc) + "\n");
  CHECK(serialize_document(result.documents[0]) == kSimpleDoc);
}

TEST_CASE("serialize then ingest is the identity on generated corpora") {
  const auto docs = testing::connective_corpus(30, 99);
  std::string blob;
  for (const Document& doc : docs) blob += serialize_document(doc) + "\n";
  const IngestResult result = ingest_string(blob);
  REQUIRE(result.documents.size() == docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CHECK(result.documents[i] == docs[i]);
    CHECK(serialize_document(result.documents[i]) ==
          serialize_document(docs[i]));
  }
}
