#include "patbitext/ingest.hpp"

#include <algorithm>
#include <array>
#include <regex>
#include <set>

#include "patbitext/io.hpp"
#include "patbitext/text.hpp"

namespace patbitext::ingest {

namespace {

using xml::Element;

// Elements whose content never reaches extracted text: numbering markers,
// formulas, figures and tables.
constexpr std::array<std::string_view, 13> kDroppedElements = {
    "claim-number", "claim-num", "paragraph-number", "para-num", "maths",
    "math",         "figref",    "figure",           "img",      "tables",
    "table",        "chemistry", "chem"};

bool is_dropped(std::string_view name) {
  return std::find(kDroppedElements.begin(), kDroppedElements.end(), name) !=
         kDroppedElements.end();
}

void gather_text(const Element& e, std::string& out) {
  for (const auto& c : e.content) {
    if (c.element < 0) {
      out += c.text;
      continue;
    }
    const auto& child = e.elements[static_cast<std::size_t>(c.element)];
    if (is_dropped(child.name)) {
      out.push_back(' ');
      continue;
    }
    gather_text(child, out);
  }
}

// U+FF1C / U+FF1E stand in for literal angle brackets so extracted text never
// contains markup characters.
std::string replace_angle_brackets(std::string s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '<') {
      out += "\xEF\xBC\x9C";
    } else if (c == '>') {
      out += "\xEF\xBC\x9E";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

constexpr std::string_view kLenticularOpen = "\xE3\x80\x90";   // 【
constexpr std::string_view kLenticularClose = "\xE3\x80\x91";  // 】

std::string strip_bracket_markers(std::string s) {
  while (s.compare(0, kLenticularOpen.size(), kLenticularOpen) == 0) {
    const auto close = s.find(kLenticularClose);
    if (close == std::string::npos) break;
    s = std::string(text::trim(std::string_view(s).substr(close + kLenticularClose.size())));
  }
  return s;
}

std::string strip_claim_number(std::string s) {
  static const std::regex kLeadingNumber(R"(^[0-9]+\s*\.\s*)");
  std::smatch m;
  if (std::regex_search(s, m, kLeadingNumber) && m.length(0) < static_cast<long>(s.size())) {
    return s.substr(static_cast<std::size_t>(m.length(0)));
  }
  return s;
}

std::string clean_paragraph(const Element& e, bool is_claim) {
  std::string raw;
  gather_text(e, raw);
  auto s = replace_angle_brackets(text::collapse_whitespace(raw));
  s = strip_bracket_markers(std::move(s));
  if (is_claim) s = strip_claim_number(std::move(s));
  return s;
}

void push_paragraph(std::vector<std::string>& out, std::string s) {
  if (!s.empty()) out.push_back(std::move(s));
}

std::string field(const Element& id, std::string_view name) {
  if (const auto* a = id.attr(name)) return std::string(text::trim(*a));
  if (const auto* c = id.child(name)) return std::string(text::trim(c->text()));
  return {};
}

// Prefers the docdb-format document-id when several formats are listed.
const Element* pick_document_id(const Element& ref) {
  if (ref.name == "document-id") return &ref;
  const auto ids = ref.find_all("document-id");
  if (ids.empty()) return nullptr;
  for (const auto* id : ids) {
    if (const auto* fmt = id->attr("data-format"); fmt != nullptr && *fmt == "docdb") return id;
  }
  return ids.front();
}

DocumentIdentifier read_identifier(const Element& id, std::string_view what,
                                   std::string_view default_country) {
  DocumentIdentifier out;
  out.country = field(id, "country");
  if (out.country.empty()) out.country = std::string(default_country);
  if (!is_country_code(out.country)) {
    throw MalformedRecord(std::string(what) + ": invalid country code '" + out.country + "'");
  }
  out.doc_number = field(id, "doc-number");
  if (out.doc_number.empty()) throw MalformedRecord(std::string(what) + ": missing doc-number");
  if (const auto kind = field(id, "kind"); !kind.empty()) {
    if (!text::is_ascii_upper(kind.front())) {
      throw MalformedRecord(std::string(what) + ": invalid kind '" + kind + "'");
    }
    out.kind = kind.front();
  }
  auto date = field(id, "date");
  if (date.empty()) date = field(id, "date-publ");
  if (!date.empty()) {
    out.date = Date::parse(date);
    if (!out.date) throw MalformedRecord(std::string(what) + ": invalid date '" + date + "'");
  }
  return out;
}

std::optional<DocumentIdentifier> read_reference(const Element* scope, std::string_view ref_name,
                                                 std::string_view default_country) {
  if (scope == nullptr) return std::nullopt;
  const Element* ref = scope->find(ref_name);
  if (ref == nullptr) return std::nullopt;
  const Element* id = pick_document_id(*ref);
  if (id == nullptr) throw MalformedRecord(std::string(ref_name) + ": missing document-id");
  return read_identifier(*id, ref_name, default_country);
}

DocumentIdentifier require_reference(const Element* scope, std::string_view ref_name,
                                     std::string_view default_country) {
  auto id = read_reference(scope, ref_name, default_country);
  if (!id) throw MalformedRecord("missing " + std::string(ref_name));
  return *id;
}

std::string compose_ipcr(const Element& e) {
  const auto* section = e.child("section");
  if (section == nullptr) return e.text();
  std::string out = field(e, "section") + field(e, "class") + field(e, "subclass");
  const auto group = field(e, "main-group");
  const auto subgroup = field(e, "subgroup");
  if (!group.empty() && !subgroup.empty()) out += " " + group + "/" + subgroup;
  return out;
}

void gather_ipc(const Element& e, std::vector<std::string>& raw) {
  for (const auto& c : e.elements) {
    if (c.name == "main-clsf" || c.name == "further-clsf") {
      raw.push_back(c.text());
    } else if (c.name == "classification-ipcr") {
      raw.push_back(compose_ipcr(c));
    } else {
      gather_ipc(c, raw);
    }
  }
}

std::vector<std::string> read_ipc_codes(const Element& record, Diagnostics* diag) {
  std::vector<std::string> raw;
  gather_ipc(record, raw);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& r : raw) {
    auto code = normalize_ipc(r);
    if (!code) {
      if (diag != nullptr) {
        diag->warn(Errc::MalformedRecord,
                   "ignoring IPC symbol '" + text::collapse_whitespace(r) + "'");
      }
      continue;
    }
    if (seen.insert(*code).second) out.push_back(std::move(*code));
  }
  return out;
}

std::string decode(std::string_view bytes, const ParseOptions& options) {
  if (options.source_encoding) return io::transcode_to_utf8(bytes, *options.source_encoding);
  return std::string(bytes);
}

Element single_record(std::string_view bytes, std::string_view root, const ParseOptions& options) {
  auto records = xml::read_records(decode(bytes, options), root, options.namespaces);
  if (records.empty()) throw MalformedRecord("no <" + std::string(root) + "> element found");
  if (records.size() > 1) {
    throw MalformedRecord("expected one <" + std::string(root) + "> record, found " +
                          std::to_string(records.size()));
  }
  return std::move(records.front());
}

template <class T, class ParseFn>
std::vector<T> read_file_records(const std::filesystem::path& path, std::string_view root,
                                 const ParseOptions& options, Diagnostics& diag, ParseFn parse) {
  std::vector<T> out;
  std::vector<Element> records;
  try {
    records = xml::read_records(decode(io::read_file(path), options), root, options.namespaces);
  } catch (const MalformedRecord& e) {
    diag.warn(Errc::MalformedRecord, path.string() + ": " + e.what());
    return out;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      out.push_back(parse(records[i]));
    } catch (const Error& e) {
      diag.warn(e.code(), path.string() + " record " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

DocumentParts extract_text_parts(const Element& record, Office) {
  DocumentParts parts;
  if (const auto* title = record.find("invention-title")) {
    parts.title = clean_paragraph(*title, false);
  }
  if (const auto* abs = record.find("abstract")) {
    for (const auto* p : abs->find_all("p")) push_paragraph(parts.abstract, clean_paragraph(*p, false));
  }
  if (const auto* desc = record.find("description")) {
    for (const auto* p : desc->find_all("p")) {
      push_paragraph(parts.description, clean_paragraph(*p, false));
    }
  }
  if (const auto* claims = record.find("claims")) {
    auto items = claims->find_all("claim");
    if (items.empty()) items = claims->find_all("p");
    for (const auto* c : items) push_paragraph(parts.claims, clean_paragraph(*c, true));
  }
  return parts;
}

PatentDocument parse_jpo_record(const Element& record, Diagnostics* diag) {
  if (record.name != kJpoRoot) throw MalformedRecord("root element is not jp-official-gazette");
  const auto* kind_attr = record.attr("kind-of-jp");
  if (kind_attr == nullptr || kind_attr->empty()) throw MalformedRecord("missing kind-of-jp");
  const auto kind_text = std::string(text::trim(*kind_attr));
  std::optional<GazetteKind> kind;
  if (kind_text.size() == 1) kind = gazette_from_letter(kind_text.front());
  if (!kind) throw UnknownKind("kind-of-jp '" + kind_text + "' is not one of A, T, S");

  const Element* bib = record.find("bibliographic-data");
  if (bib == nullptr) throw MalformedRecord("missing bibliographic-data");

  PatentDocument doc;
  doc.office = Office::Jpo;
  doc.gazette_kind = kind;
  doc.publication = require_reference(bib, "publication-reference", "JP");
  doc.application = require_reference(bib, "application-reference", "JP");
  doc.pct_filing = read_reference(bib, "pct-or-regional-filing-data", "WO");
  doc.pct_publication = read_reference(bib, "pct-or-regional-publishing-data", "WO");
  if (*kind == GazetteKind::PctTranslation && (!doc.pct_filing || !doc.pct_publication)) {
    throw MalformedRecord(
        "kind T requires pct-or-regional-filing-data and pct-or-regional-publishing-data");
  }
  doc.ipc_codes = read_ipc_codes(record, diag);
  doc.parts = extract_text_parts(record, Office::Jpo);
  return doc;
}

PatentDocument parse_uspto_record(const Element& record, Diagnostics* diag) {
  if (record.name != kUsptoRoot) throw MalformedRecord("root element is not us-patent-application");
  const Element* bib = record.find("us-bibliographic-data-application");
  if (bib == nullptr) throw MalformedRecord("missing us-bibliographic-data-application");

  PatentDocument doc;
  doc.office = Office::Uspto;
  doc.publication = require_reference(bib, "publication-reference", "US");
  doc.application = require_reference(bib, "application-reference", "US");
  if (auto pct = read_reference(bib, "pct-or-regional-filing-data", "WO");
      pct && pct->doc_number.rfind("PCT", 0) == 0) {
    doc.pct_filing = std::move(pct);
  }
  doc.pct_publication = read_reference(bib, "pct-or-regional-publishing-data", "WO");
  doc.ipc_codes = read_ipc_codes(record, diag);
  doc.parts = extract_text_parts(record, Office::Uspto);
  return doc;
}

PriorityRecord parse_docdb_record(const Element& record) {
  if (record.name != kDocdbRoot) throw MalformedRecord("root element is not exchange-document");
  PriorityRecord out;
  out.subject = read_identifier(record, "exchange-document", "");
  const Element* bib = record.find("bibliographic-data");
  if (bib == nullptr) bib = &record;
  out.application = read_reference(bib, "application-reference", "");
  if (out.application) out.application_kind = out.application->kind;
  if (const auto* claims = bib->find("priority-claims")) {
    auto items = claims->find_all("priority-claim");
    if (items.empty()) {
      for (const auto* id : claims->find_all("document-id")) {
        out.claims.push_back(read_identifier(*id, "priority-claims", ""));
      }
    } else {
      for (const auto* claim : items) {
        const auto* id = pick_document_id(*claim);
        if (id == nullptr) throw MalformedRecord("priority-claim without document-id");
        out.claims.push_back(read_identifier(*id, "priority-claim", ""));
      }
    }
  }
  return out;
}

PatentDocument parse_jpo(std::string_view document_bytes, const ParseOptions& options,
                         Diagnostics* diag) {
  return parse_jpo_record(single_record(document_bytes, kJpoRoot, options), diag);
}

PatentDocument parse_uspto(std::string_view document_bytes, const ParseOptions& options,
                           Diagnostics* diag) {
  return parse_uspto_record(single_record(document_bytes, kUsptoRoot, options), diag);
}

PriorityRecord parse_docdb(std::string_view document_bytes, const ParseOptions& options) {
  return parse_docdb_record(single_record(document_bytes, kDocdbRoot, options));
}

std::vector<PatentDocument> read_jpo_file(const std::filesystem::path& path,
                                          const ParseOptions& options, Diagnostics& diag) {
  return read_file_records<PatentDocument>(
      path, kJpoRoot, options, diag, [&](const Element& e) { return parse_jpo_record(e, &diag); });
}

std::vector<PatentDocument> read_uspto_file(const std::filesystem::path& path,
                                            const ParseOptions& options, Diagnostics& diag) {
  return read_file_records<PatentDocument>(
      path, kUsptoRoot, options, diag,
      [&](const Element& e) { return parse_uspto_record(e, &diag); });
}

std::vector<PriorityRecord> read_docdb_file(const std::filesystem::path& path,
                                            const ParseOptions& options, Diagnostics& diag) {
  return read_file_records<PriorityRecord>(path, kDocdbRoot, options, diag,
                                           [](const Element& e) { return parse_docdb_record(e); });
}

}  // namespace patbitext::ingest
