#pragma once

#include "temprel/document.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace temprel {

/// Parsed corpus plus ingest diagnostics.
struct IngestResult {
  std::vector<Document> documents;
  /// Gold pairs discarded because their sentence distance exceeds one.
  std::size_t dropped_gold_pairs = 0;
};

/// Reads a line-delimited corpus: one self-describing JSON document record
/// per line, UTF-8. Invariants are validated; a gold pair whose events sit
/// more than one sentence apart is dropped and counted rather than rejected.
IngestResult ingest_corpus(const std::filesystem::path& path);
IngestResult ingest_corpus(std::istream& in, const std::string& source_name);

/// Canonical single-line form of one document: compact JSON with
/// alphabetically ordered keys and optional fields omitted when empty.
/// ingest + serialize round-trips canonical input byte-identically.
std::string serialize_document(const Document& doc);

void write_corpus(const std::vector<Document>& docs,
                  const std::filesystem::path& path);

/// Parses one document record; `where` names the source in error messages.
Document parse_document_line(const std::string& line, const std::string& where,
                             std::size_t* dropped_gold_pairs = nullptr);

}  // namespace temprel
