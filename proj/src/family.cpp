#include "patbitext/family.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>

#include "patbitext/io.hpp"
#include "patbitext/text.hpp"

namespace patbitext::family {

std::string_view route_name(RouteLabel route) {
  switch (route) {
    case RouteLabel::JpUs: return "jp-us";
    case RouteLabel::JpXUs: return "jp-x-us";
    case RouteLabel::UsJp: return "us-jp";
    case RouteLabel::Pct: return "pct";
  }
  return "?";
}

std::optional<RouteLabel> route_from_name(std::string_view name) {
  for (auto r : kAllRoutes) {
    if (route_name(r) == name) return r;
  }
  return std::nullopt;
}

std::string PctKey::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04d%06d", country.c_str(), year, serial);
  return buf;
}

namespace {

int expand_year(const std::string& digits) {
  int y = std::stoi(digits);
  if (digits.size() == 2) y += y < 50 ? 2000 : 1900;
  return y;
}

std::optional<PctKey> make_key(std::string country, const std::string& year,
                               const std::string& serial) {
  if (!is_country_code(country) || country == "WO") return std::nullopt;
  PctKey key{std::move(country), expand_year(year), std::stoi(serial)};
  if (key.year < 1970 || key.year > 2199) return std::nullopt;
  return key;
}

}  // namespace

std::optional<PctKey> normalize_pct(std::string_view doc_number, std::string_view country_hint) {
  std::string s;
  for (char c : doc_number) {
    if (!text::is_ascii_space(c) && c != '-') s.push_back(c);
  }
  s = text::to_upper_ascii(s);

  static const std::regex kSlashed(R"(^PCT/([A-Z]{2})([0-9]{4}|[0-9]{2})/([0-9]{1,6})$)");
  static const std::regex kCompact(R"(^PCT([A-Z]{2})([0-9]{4})([0-9]{6})$)");
  static const std::regex kWoWithOffice(R"(^WO/?([0-9]{4})/?([A-Z]{2})/?([0-9]{1,6})$)");
  static const std::regex kDocdb(R"(^([A-Z]{2})([0-9]{4})([0-9]{6})$)");
  static const std::regex kWoBare(R"(^WO/?([0-9]{4})/?([0-9]{6})$)");

  std::smatch m;
  if (std::regex_match(s, m, kSlashed) || std::regex_match(s, m, kCompact)) {
    return make_key(m[1].str(), m[2].str(), m[3].str());
  }
  if (std::regex_match(s, m, kWoWithOffice)) return make_key(m[2].str(), m[1].str(), m[3].str());
  if (std::regex_match(s, m, kDocdb) && m[1].str() != "WO") {
    return make_key(m[1].str(), m[2].str(), m[3].str());
  }
  if (std::regex_match(s, m, kWoBare)) {
    const auto hint = text::to_upper_ascii(text::trim(country_hint));
    if (!is_country_code(hint) || hint == "WO") return std::nullopt;
    return make_key(hint, m[1].str(), m[2].str());
  }
  return std::nullopt;
}

std::string make_pair_id(const PatentDocument& jp, const PatentDocument& us) {
  return "JP" + text::alnum_upper(jp.publication.doc_number) + "-US" +
         text::alnum_upper(us.publication.doc_number);
}

std::optional<std::pair<std::string, std::string>> split_pair_id(std::string_view pair_id) {
  if (pair_id.rfind("JP", 0) != 0) return std::nullopt;
  const auto dash = pair_id.find("-US");
  if (dash == std::string_view::npos || dash < 3 || dash + 3 >= pair_id.size()) return std::nullopt;
  return std::make_pair(std::string(pair_id.substr(2, dash - 2)),
                        std::string(pair_id.substr(dash + 3)));
}

ClaimKey claim_key(const DocumentIdentifier& id) {
  return {id.country, normalize_doc_number(id.doc_number), id.kind.value_or(0)};
}

NumberKey number_key(const DocumentIdentifier& id) {
  return {id.country, normalize_doc_number(id.doc_number)};
}

const std::vector<DocumentIdentifier>& PriorityIndex::claimants(
    const DocumentIdentifier& claimed) const {
  static const std::vector<DocumentIdentifier> kNone;
  auto it = by_claim_.find(claim_key(claimed));
  return it == by_claim_.end() ? kNone : it->second;
}

const std::vector<DocumentIdentifier>* PriorityIndex::claims_of(
    const DocumentIdentifier& subject) const {
  auto it = by_subject_.find(number_key(subject));
  return it == by_subject_.end() ? nullptr : &it->second;
}

PriorityIndex build_priority_index(std::span<const PriorityRecord> records, Diagnostics* diag) {
  PriorityIndex index;
  std::map<NumberKey, DocumentIdentifier> subject_ids;
  for (const auto& r : records) {
    const auto key = number_key(r.subject);
    auto [it, inserted] = index.by_subject_.try_emplace(key, r.claims);
    if (!inserted) {
      std::vector<ClaimKey> before;
      std::vector<ClaimKey> after;
      for (const auto& c : it->second) before.push_back(claim_key(c));
      for (const auto& c : r.claims) after.push_back(claim_key(c));
      if (before != after && diag != nullptr) {
        diag->warn(Errc::DuplicateSubject, "subject " + r.subject.country + r.subject.doc_number +
                                               " repeated with different priority claims");
      }
      it->second = r.claims;
    }
    subject_ids[key] = r.subject;
  }
  for (const auto& [key, claims] : index.by_subject_) {
    std::set<ClaimKey> seen;
    for (const auto& c : claims) {
      const auto ck = claim_key(c);
      if (seen.insert(ck).second) index.by_claim_[ck].push_back(subject_ids.at(key));
    }
  }
  return index;
}

std::set<PctKey> collect_pct_applications(std::span<const PriorityRecord> records,
                                          Diagnostics* diag) {
  std::set<PctKey> keys;
  for (const auto& r : records) {
    if (r.application_kind != 'W' || !r.application) continue;
    if (auto key = normalize_pct(r.application->doc_number, r.application->country)) {
      keys.insert(std::move(*key));
    } else if (diag != nullptr) {
      diag->warn(Errc::UnparseablePctNumber,
                 "DOCDB application " + r.application->doc_number + " is not a PCT number");
    }
  }
  return keys;
}

namespace {

using DateKey = std::pair<int, Date>;  // (missing?, date)

DateKey earliest(const std::optional<Date>& a, const std::optional<Date>& b) {
  if (a && b) return {0, std::min(*a, *b)};
  if (a) return {0, *a};
  if (b) return {0, *b};
  return {1, Date{}};
}

auto order_key(const DocumentPair& p) {
  return std::make_tuple(earliest(p.jp_doc->application.date, p.us_doc->application.date),
                         earliest(p.jp_doc->publication.date, p.us_doc->publication.date),
                         std::cref(p.pair_id));
}

std::string anchor_text(const DocumentIdentifier& id) {
  return id.country + "|" + id.doc_number + "|" + std::string(1, id.kind.value_or(' '));
}

bool is_paris_jp(const PatentDocument& d) {
  return d.gazette_kind == GazetteKind::PublishedApplication;
}

template <class Key>
std::multimap<Key, DocumentRef> index_docs(std::span<const DocumentRef> docs,
                                           Key (*key_of)(const PatentDocument&)) {
  std::multimap<Key, DocumentRef> out;
  for (const auto& d : docs) out.emplace(key_of(*d), d);
  return out;
}

NumberKey publication_key(const PatentDocument& d) { return number_key(d.publication); }
NumberKey application_key(const PatentDocument& d) { return number_key(d.application); }

// Groups candidates per JP document and keeps the oldest of each group.
std::vector<DocumentPair> keep_oldest_per_jp(std::vector<DocumentPair> candidates,
                                             std::vector<DocumentPair>* discarded) {
  std::map<std::string, std::vector<DocumentPair>> groups;
  for (auto& c : candidates) {
    groups[text::alnum_upper(c.jp_doc->publication.doc_number)].push_back(std::move(c));
  }
  std::vector<DocumentPair> out;
  for (auto& [jp, group] : groups) {
    // Exact duplicates (same pair, several anchors) keep the smallest anchor.
    std::stable_sort(group.begin(), group.end(), [](const DocumentPair& a, const DocumentPair& b) {
      if (older_than(a, b)) return true;
      if (older_than(b, a)) return false;
      return anchor_text(a.anchor) < anchor_text(b.anchor);
    });
    const auto& best = select_oldest_pair(group);
    std::size_t best_pos = static_cast<std::size_t>(&best - group.data());
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i == best_pos) continue;
      if (discarded != nullptr && group[i].pair_id != best.pair_id) {
        discarded->push_back(group[i]);
      }
    }
    out.push_back(group[best_pos]);
  }
  std::sort(out.begin(), out.end(),
            [](const DocumentPair& a, const DocumentPair& b) { return a.pair_id < b.pair_id; });
  return out;
}

DocumentPair make_pair(const DocumentRef& jp, const DocumentRef& us, RouteLabel route,
                       const DocumentIdentifier& anchor) {
  return {make_pair_id(*jp, *us), jp, us, route, anchor};
}

}  // namespace

bool older_than(const DocumentPair& a, const DocumentPair& b) { return order_key(a) < order_key(b); }

const DocumentPair& select_oldest_pair(std::span<const DocumentPair> candidates) {
  if (candidates.empty()) throw InvariantViolation("select_oldest_pair: no candidates");
  const DocumentPair* best = &candidates.front();
  for (const auto& c : candidates.subspan(1)) {
    if (older_than(c, *best)) best = &c;
  }
  return *best;
}

std::vector<DocumentPair> pair_paris(std::span<const DocumentRef> jp_docs,
                                     std::span<const DocumentRef> us_docs,
                                     const PriorityIndex& index,
                                     std::vector<DocumentPair>* discarded) {
  std::vector<DocumentRef> jp_a;
  for (const auto& d : jp_docs) {
    if (is_paris_jp(*d)) jp_a.push_back(d);
  }
  const auto jp_by_application = index_docs<NumberKey>(jp_a, application_key);
  const auto us_by_application = index_docs<NumberKey>(us_docs, application_key);
  const auto us_by_publication = index_docs<NumberKey>(us_docs, publication_key);

  std::vector<DocumentPair> jp_us;
  std::vector<DocumentPair> us_jp;
  std::vector<DocumentPair> jp_x_us;

  // jp-us: a US publication claims priority from a JP kind-A application.
  for (const auto& us : us_docs) {
    const auto* claims = index.claims_of(us->publication);
    if (claims == nullptr || us->publication.country != "US") continue;
    for (const auto& c : *claims) {
      if (c.country != "JP" || c.kind != 'A') continue;
      auto [b, e] = jp_by_application.equal_range(number_key(c));
      for (auto it = b; it != e; ++it) jp_us.push_back(make_pair(it->second, us, RouteLabel::JpUs, c));
    }
  }

  for (const auto& jp : jp_a) {
    const auto* claims = index.claims_of(jp->publication);
    if (claims == nullptr) continue;
    for (const auto& c : *claims) {
      if (c.country == "US") {
        // us-jp: the JP publication claims a US kind-A application.
        if (c.kind != 'A') continue;
        auto [b, e] = us_by_application.equal_range(number_key(c));
        for (auto it = b; it != e; ++it) us_jp.push_back(make_pair(jp, it->second, RouteLabel::UsJp, c));
      } else if (c.country != "JP") {
        // jp-x-us: a US publication claims the same third-country document-id.
        for (const auto& subject : index.claimants(c)) {
          if (subject.country != "US") continue;
          auto [b, e] = us_by_publication.equal_range(number_key(subject));
          for (auto it = b; it != e; ++it) {
            jp_x_us.push_back(make_pair(jp, it->second, RouteLabel::JpXUs, c));
          }
        }
      }
    }
  }

  std::vector<DocumentPair> out;
  for (auto* group : {&jp_us, &us_jp, &jp_x_us}) {
    auto kept = keep_oldest_per_jp(std::move(*group), discarded);
    out.insert(out.end(), std::make_move_iterator(kept.begin()), std::make_move_iterator(kept.end()));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const DocumentPair& a, const DocumentPair& b) { return a.pair_id < b.pair_id; });
  return out;
}

std::vector<DocumentPair> pair_pct(std::span<const DocumentRef> jp_docs,
                                   std::span<const DocumentRef> us_docs,
                                   const std::set<PctKey>& docdb_applications, Diagnostics* diag,
                                   std::vector<DocumentPair>* discarded) {
  std::multimap<PctKey, DocumentRef> us_by_key;
  for (const auto& us : us_docs) {
    if (!us->pct_filing || us->pct_filing->doc_number.rfind("PCT", 0) != 0) continue;
    if (auto key = normalize_pct(us->pct_filing->doc_number, us->pct_filing->country)) {
      us_by_key.emplace(std::move(*key), us);
    } else if (diag != nullptr) {
      diag->warn(Errc::UnparseablePctNumber,
                 "US " + us->publication.doc_number + ": " + us->pct_filing->doc_number);
    }
  }

  std::vector<DocumentPair> candidates;
  for (const auto& jp : jp_docs) {
    if (jp->gazette_kind != GazetteKind::PctTranslation &&
        jp->gazette_kind != GazetteKind::PctDomesticRepublication) {
      continue;
    }
    if (!jp->pct_filing || jp->pct_filing->doc_number.rfind("WO", 0) != 0) continue;
    auto key = normalize_pct(jp->pct_filing->doc_number, jp->pct_filing->country);
    if (!key) {
      if (diag != nullptr) {
        diag->warn(Errc::UnparseablePctNumber,
                   "JP " + jp->publication.doc_number + ": " + jp->pct_filing->doc_number);
      }
      continue;
    }
    if (docdb_applications.count(*key) == 0) continue;
    DocumentIdentifier anchor{"WO", key->to_string(), 'W', std::nullopt};
    auto [b, e] = us_by_key.equal_range(*key);
    for (auto it = b; it != e; ++it) candidates.push_back(make_pair(jp, it->second, RouteLabel::Pct, anchor));
  }
  return keep_oldest_per_jp(std::move(candidates), discarded);
}

PairingResult align_documents(std::span<const DocumentRef> jp_docs,
                              std::span<const DocumentRef> us_docs,
                              std::span<const PriorityRecord> docdb_records) {
  PairingResult result;
  const auto index = build_priority_index(docdb_records, &result.diag);
  const auto pct_keys = collect_pct_applications(docdb_records, &result.diag);

  auto paris = pair_paris(jp_docs, us_docs, index, &result.discarded);
  auto pct = pair_pct(jp_docs, us_docs, pct_keys, &result.diag, &result.discarded);

  auto rank = [](RouteLabel r) {
    switch (r) {
      case RouteLabel::JpUs: return 0;
      case RouteLabel::UsJp: return 1;
      case RouteLabel::JpXUs: return 2;
      case RouteLabel::Pct: return 3;
    }
    return 4;
  };
  std::vector<DocumentPair> all = std::move(paris);
  all.insert(all.end(), std::make_move_iterator(pct.begin()), std::make_move_iterator(pct.end()));
  std::stable_sort(all.begin(), all.end(), [&](const DocumentPair& a, const DocumentPair& b) {
    if (a.pair_id != b.pair_id) return a.pair_id < b.pair_id;
    return rank(a.route) < rank(b.route);
  });
  for (auto& p : all) {
    if (!result.pairs.empty() && result.pairs.back().pair_id == p.pair_id) {
      result.discarded.push_back(std::move(p));
      continue;
    }
    result.pairs.push_back(std::move(p));
  }
  std::sort(result.discarded.begin(), result.discarded.end(),
            [](const DocumentPair& a, const DocumentPair& b) {
              return std::tie(a.pair_id, a.route) < std::tie(b.pair_id, b.route);
            });
  return result;
}

PairRow to_row(const DocumentPair& pair) {
  return {pair.pair_id,          pair.route,
          pair.anchor.country,   pair.anchor.doc_number,
          pair.jp_doc->publication.date, pair.us_doc->publication.date};
}

std::string pairs_to_tsv(std::vector<PairRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const PairRow& a, const PairRow& b) { return a.pair_id < b.pair_id; });
  std::string out;
  for (const auto& r : rows) {
    out += r.pair_id;
    out += '\t';
    out += route_name(r.route);
    out += '\t' + r.anchor_country + '\t' + r.anchor_number + '\t';
    out += r.jp_publication_date ? r.jp_publication_date->to_string() : "";
    out += '\t';
    out += r.us_publication_date ? r.us_publication_date->to_string() : "";
    out += '\n';
  }
  return out;
}

std::vector<PairRow> parse_pairs_tsv(std::string_view content) {
  std::vector<PairRow> rows;
  std::size_t line_no = 0;
  for (auto line : io::split_lines(content)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cols = text::split(line, '\t');
    const auto where = "pairs.tsv line " + std::to_string(line_no);
    if (cols.size() != 6) throw MalformedRecord(where + ": expected 6 columns");
    PairRow row;
    row.pair_id = std::string(cols[0]);
    if (!split_pair_id(row.pair_id)) throw MalformedRecord(where + ": bad pair id");
    const auto route = route_from_name(cols[1]);
    if (!route) throw MalformedRecord(where + ": unknown route " + std::string(cols[1]));
    row.route = *route;
    row.anchor_country = std::string(cols[2]);
    row.anchor_number = std::string(cols[3]);
    for (auto [col, slot] : {std::pair{cols[4], &row.jp_publication_date},
                             std::pair{cols[5], &row.us_publication_date}}) {
      if (col.empty()) continue;
      *slot = Date::parse(col);
      if (!*slot) throw MalformedRecord(where + ": bad date " + std::string(col));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace patbitext::family
