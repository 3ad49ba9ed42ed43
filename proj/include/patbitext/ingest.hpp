#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patbitext/error.hpp"
#include "patbitext/patent.hpp"
#include "patbitext/xml.hpp"

namespace patbitext::ingest {

inline constexpr std::string_view kJpoRoot = "jp-official-gazette";
inline constexpr std::string_view kUsptoRoot = "us-patent-application";
inline constexpr std::string_view kDocdbRoot = "exchange-document";

struct ParseOptions {
  xml::NamespaceMap namespaces;
  // iconv name of the input encoding (e.g. "SHIFT_JIS"); UTF-8 when unset.
  std::optional<std::string> source_encoding;
};

// Single-record entry points. `diag` receives non-fatal issues such as IPC
// symbols that do not follow the grammar.
PatentDocument parse_jpo(std::string_view document_bytes, const ParseOptions& options = {},
                         Diagnostics* diag = nullptr);
PatentDocument parse_uspto(std::string_view document_bytes, const ParseOptions& options = {},
                           Diagnostics* diag = nullptr);
PriorityRecord parse_docdb(std::string_view document_bytes, const ParseOptions& options = {});

// Record-level parsers over an already split record element.
PatentDocument parse_jpo_record(const xml::Element& record, Diagnostics* diag = nullptr);
PatentDocument parse_uspto_record(const xml::Element& record, Diagnostics* diag = nullptr);
PriorityRecord parse_docdb_record(const xml::Element& record);

DocumentParts extract_text_parts(const xml::Element& record, Office office);

// Whole-file readers: every record in the file (concatenated or wrapped,
// optionally gzip-compressed). Bad records are skipped and reported in `diag`.
std::vector<PatentDocument> read_jpo_file(const std::filesystem::path& path,
                                          const ParseOptions& options, Diagnostics& diag);
std::vector<PatentDocument> read_uspto_file(const std::filesystem::path& path,
                                            const ParseOptions& options, Diagnostics& diag);
std::vector<PriorityRecord> read_docdb_file(const std::filesystem::path& path,
                                            const ParseOptions& options, Diagnostics& diag);

// Serializers emitting the accepted subset schema (see docs/formats.md).
std::string to_jpo_xml(const PatentDocument& doc);
std::string to_uspto_xml(const PatentDocument& doc);
std::string to_docdb_xml(const PriorityRecord& record);

}  // namespace patbitext::ingest
