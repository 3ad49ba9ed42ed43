#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "patbitext/patent.hpp"

namespace patbitext::store {

// Parsed-record store written by the parse stage: one JSON object per line
// in jpo.jsonl, uspto.jsonl and docdb.jsonl.
struct RecordStore {
  std::vector<PatentDocument> jpo;
  std::vector<PatentDocument> uspto;
  std::vector<PriorityRecord> docdb;
};

std::string to_json_line(const PatentDocument& doc);
std::string to_json_line(const PriorityRecord& record);
PatentDocument document_from_json(const std::string& line);
PriorityRecord priority_from_json(const std::string& line);

// Records are sorted by publication/subject number before writing, so the
// store is byte-stable regardless of input file order.
void write_store(const std::filesystem::path& dir, RecordStore store);
RecordStore read_store(const std::filesystem::path& dir);

}  // namespace patbitext::store
