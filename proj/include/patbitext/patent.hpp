#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace patbitext {

// Gregorian calendar date as written in patent records (YYYYMMDD).
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  // Returns nullopt unless `s` is exactly 8 digits forming a valid date.
  static std::optional<Date> parse(std::string_view s);
  std::string to_string() const;

  auto operator<=>(const Date&) const = default;
};

struct DocumentIdentifier {
  std::string country;           // two uppercase ASCII letters
  std::string doc_number;
  std::optional<char> kind;      // single letter
  std::optional<Date> date;

  bool operator==(const DocumentIdentifier&) const = default;
};

bool is_country_code(std::string_view s);

enum class Office { Jpo, Uspto };

enum class GazetteKind { PublishedApplication, PctTranslation, PctDomesticRepublication };

char gazette_letter(GazetteKind kind);
std::optional<GazetteKind> gazette_from_letter(char letter);

struct DocumentParts {
  std::string title;
  std::vector<std::string> abstract;
  std::vector<std::string> description;
  std::vector<std::string> claims;

  bool operator==(const DocumentParts&) const = default;
};

struct PatentDocument {
  Office office = Office::Jpo;
  std::optional<GazetteKind> gazette_kind;  // JPO only
  DocumentIdentifier publication;
  DocumentIdentifier application;
  std::optional<DocumentIdentifier> pct_filing;
  std::optional<DocumentIdentifier> pct_publication;
  std::vector<std::string> ipc_codes;
  DocumentParts parts;

  bool operator==(const PatentDocument&) const = default;
};

// One DOCDB exchange document reduced to its priority-claim data.
struct PriorityRecord {
  DocumentIdentifier subject;
  std::vector<DocumentIdentifier> claims;  // source order
  std::optional<DocumentIdentifier> application;
  std::optional<char> application_kind;    // 'A' ordinary, 'W' PCT

  bool operator==(const PriorityRecord&) const = default;
};

// Upper-cases and keeps only letters and digits, then drops leading zeros.
// Office formats differ in padding and separators.
std::string normalize_doc_number(std::string_view doc_number);

// Canonical "G06F 16/00" / "H04L" form, or nullopt if `raw` does not follow
// the IPC symbol grammar. Trailing version/date tokens are ignored.
std::optional<std::string> normalize_ipc(std::string_view raw);

}  // namespace patbitext
