#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "patbitext/error.hpp"
#include "patbitext/patent.hpp"

namespace patbitext::family {

enum class RouteLabel { JpUs, JpXUs, UsJp, Pct };

inline constexpr RouteLabel kAllRoutes[] = {RouteLabel::JpUs, RouteLabel::JpXUs, RouteLabel::UsJp,
                                            RouteLabel::Pct};

std::string_view route_name(RouteLabel route);
std::optional<RouteLabel> route_from_name(std::string_view name);

// Canonical PCT application key: receiving office + 4-digit year + 6-digit
// serial, e.g. "JP2005003817".
struct PctKey {
  std::string country;
  int year = 0;
  int serial = 0;

  std::string to_string() const;
  auto operator<=>(const PctKey&) const = default;
};

// Accepted spellings (separators and case are tolerated):
//   PCT/JP2005/003817, PCT/JP05/003817   USPTO style
//   PCTJP2005003817                       compact
//   WO2005JP003817, WO2005/JP/003817      JPO style
//   JP2005003817                          DOCDB application number
//   WO2005003817                          office taken from `country_hint`
std::optional<PctKey> normalize_pct(std::string_view doc_number, std::string_view country_hint = {});

using DocumentRef = std::shared_ptr<const PatentDocument>;

struct DocumentPair {
  std::string pair_id;
  DocumentRef jp_doc;
  DocumentRef us_doc;
  RouteLabel route = RouteLabel::JpUs;
  DocumentIdentifier anchor;
};

// "JP<publication>-US<publication>" over the alphanumeric characters of each
// publication number.
std::string make_pair_id(const PatentDocument& jp, const PatentDocument& us);

// Matching key for a claimed document-id: country, normalized number, kind.
struct ClaimKey {
  std::string country;
  std::string number;
  char kind = 0;
  auto operator<=>(const ClaimKey&) const = default;
};
ClaimKey claim_key(const DocumentIdentifier& id);

// Key linking a DOCDB subject or application number to an office document.
struct NumberKey {
  std::string country;
  std::string number;
  auto operator<=>(const NumberKey&) const = default;
};
NumberKey number_key(const DocumentIdentifier& id);

class PriorityIndex {
 public:
  // Subjects whose priority claims include `claimed`.
  const std::vector<DocumentIdentifier>& claimants(const DocumentIdentifier& claimed) const;
  // Claims made by `subject`; nullptr when the subject is unknown.
  const std::vector<DocumentIdentifier>* claims_of(const DocumentIdentifier& subject) const;

  std::size_t subject_count() const { return by_subject_.size(); }
  std::size_t claimed_count() const { return by_claim_.size(); }
  bool empty() const { return by_subject_.empty(); }

 private:
  friend PriorityIndex build_priority_index(std::span<const PriorityRecord>, Diagnostics*);

  std::map<ClaimKey, std::vector<DocumentIdentifier>> by_claim_;
  std::map<NumberKey, std::vector<DocumentIdentifier>> by_subject_;
};

// Repeated subjects with a different claims list are reported as
// DuplicateSubject warnings; the last record wins.
PriorityIndex build_priority_index(std::span<const PriorityRecord> records,
                                   Diagnostics* diag = nullptr);

// PCT keys of DOCDB applications whose application-reference kind is W.
std::set<PctKey> collect_pct_applications(std::span<const PriorityRecord> records,
                                          Diagnostics* diag = nullptr);

// Total order used to pick one pair among alternatives: earliest application
// (filing) date of either document, then earliest publication date, then
// pair_id. Missing dates sort last.
bool older_than(const DocumentPair& a, const DocumentPair& b);

// Throws InvariantViolation on an empty candidate list.
const DocumentPair& select_oldest_pair(std::span<const DocumentPair> candidates);

// Paris route (jp-us, us-jp, jp-x-us). Only JP gazette kind A documents take
// part. One pair per JP document per route survives; the others go to
// `discarded` when given.
std::vector<DocumentPair> pair_paris(std::span<const DocumentRef> jp_docs,
                                     std::span<const DocumentRef> us_docs,
                                     const PriorityIndex& index,
                                     std::vector<DocumentPair>* discarded = nullptr);

// PCT route: JP kind S/T documents with a WO number, US documents with a PCT
// number, matched on PctKey when the key is a DOCDB W application.
std::vector<DocumentPair> pair_pct(std::span<const DocumentRef> jp_docs,
                                   std::span<const DocumentRef> us_docs,
                                   const std::set<PctKey>& docdb_applications,
                                   Diagnostics* diag = nullptr,
                                   std::vector<DocumentPair>* discarded = nullptr);

struct PairingResult {
  std::vector<DocumentPair> pairs;      // sorted by pair_id, unique ids
  std::vector<DocumentPair> discarded;  // alternatives dropped by selection
  Diagnostics diag;
};

// Document alignment over all routes. Where one JP/US publication pair is
// reached by several Paris routes it is kept once, preferring jp-us, then
// us-jp, then jp-x-us.
PairingResult align_documents(std::span<const DocumentRef> jp_docs,
                              std::span<const DocumentRef> us_docs,
                              std::span<const PriorityRecord> docdb_records);

// One pairs.tsv line.
struct PairRow {
  std::string pair_id;
  RouteLabel route = RouteLabel::JpUs;
  std::string anchor_country;
  std::string anchor_number;
  std::optional<Date> jp_publication_date;
  std::optional<Date> us_publication_date;

  bool operator==(const PairRow&) const = default;
};

PairRow to_row(const DocumentPair& pair);
// Columns: pair_id, route, anchor country, anchor doc_number, JP publication
// date, US publication date. Rows sorted by pair_id.
std::string pairs_to_tsv(std::vector<PairRow> rows);
std::vector<PairRow> parse_pairs_tsv(std::string_view content);

// Splits "JP…-US…" back into the two publication numbers.
std::optional<std::pair<std::string, std::string>> split_pair_id(std::string_view pair_id);

}  // namespace patbitext::family
