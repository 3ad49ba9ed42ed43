#include <string>

#include "patbitext/ingest.hpp"
#include "patbitext/xml.hpp"

namespace patbitext::ingest {

namespace {

void write_identifier(std::string& out, const DocumentIdentifier& id) {
  out += "<document-id><country>" + xml::escape(id.country) + "</country><doc-number>" +
         xml::escape(id.doc_number) + "</doc-number>";
  if (id.kind) out += std::string("<kind>") + *id.kind + "</kind>";
  if (id.date) out += "<date>" + id.date->to_string() + "</date>";
  out += "</document-id>";
}

void write_reference(std::string& out, std::string_view name, const DocumentIdentifier& id) {
  out += "<";
  out += name;
  out += ">";
  write_identifier(out, id);
  out += "</";
  out += name;
  out += ">\n";
}

void write_ipc(std::string& out, const std::vector<std::string>& codes) {
  if (codes.empty()) return;
  out += "<classification-ipc>";
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const char* tag = i == 0 ? "main-clsf" : "further-clsf";
    out += std::string("<") + tag + ">" + xml::escape(codes[i]) + "</" + tag + ">";
  }
  out += "</classification-ipc>\n";
}

void write_paragraphs(std::string& out, std::string_view part,
                      const std::vector<std::string>& paragraphs) {
  if (paragraphs.empty()) return;
  out += "<";
  out += part;
  out += ">\n";
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    char num[8];
    std::snprintf(num, sizeof num, "%04zu", i + 1);
    out += std::string("<p num=\"") + num + "\">" + xml::escape(paragraphs[i]) + "</p>\n";
  }
  out += "</";
  out += part;
  out += ">\n";
}

void write_claims(std::string& out, const std::vector<std::string>& claims) {
  if (claims.empty()) return;
  out += "<claims>\n";
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const auto n = std::to_string(i + 1);
    out += "<claim num=\"" + n + "\"><claim-number>" + n + ".</claim-number><claim-text>" +
           xml::escape(claims[i]) + "</claim-text></claim>\n";
  }
  out += "</claims>\n";
}

void write_body(std::string& out, const DocumentParts& parts) {
  write_paragraphs(out, "abstract", parts.abstract);
  write_paragraphs(out, "description", parts.description);
  write_claims(out, parts.claims);
}

}  // namespace

std::string to_jpo_xml(const PatentDocument& doc) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<jp-official-gazette kind-of-jp=\"";
  out += gazette_letter(doc.gazette_kind.value_or(GazetteKind::PublishedApplication));
  out += "\" lang=\"ja\">\n<bibliographic-data>\n";
  write_reference(out, "publication-reference", doc.publication);
  write_reference(out, "application-reference", doc.application);
  if (doc.pct_filing) write_reference(out, "pct-or-regional-filing-data", *doc.pct_filing);
  if (doc.pct_publication) {
    write_reference(out, "pct-or-regional-publishing-data", *doc.pct_publication);
  }
  write_ipc(out, doc.ipc_codes);
  out += "<invention-title>" + xml::escape(doc.parts.title) + "</invention-title>\n";
  out += "</bibliographic-data>\n";
  write_body(out, doc.parts);
  out += "</jp-official-gazette>\n";
  return out;
}

std::string to_uspto_xml(const PatentDocument& doc) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<us-patent-application lang=\"EN\">\n"
      "<us-bibliographic-data-application>\n";
  write_reference(out, "publication-reference", doc.publication);
  write_reference(out, "application-reference", doc.application);
  if (doc.pct_filing) write_reference(out, "pct-or-regional-filing-data", *doc.pct_filing);
  if (doc.pct_publication) {
    write_reference(out, "pct-or-regional-publishing-data", *doc.pct_publication);
  }
  write_ipc(out, doc.ipc_codes);
  out += "<invention-title>" + xml::escape(doc.parts.title) + "</invention-title>\n";
  out += "</us-bibliographic-data-application>\n";
  write_body(out, doc.parts);
  out += "</us-patent-application>\n";
  return out;
}

std::string to_docdb_xml(const PriorityRecord& record) {
  const auto& s = record.subject;
  std::string out = "<exch:exchange-document country=\"" + xml::escape(s.country) +
                    "\" doc-number=\"" + xml::escape(s.doc_number) + "\"";
  if (s.kind) out += std::string(" kind=\"") + *s.kind + "\"";
  if (s.date) out += " date-publ=\"" + s.date->to_string() + "\"";
  out += ">\n<exch:bibliographic-data>\n";
  if (record.application) {
    out += "<exch:application-reference>";
    write_identifier(out, *record.application);
    out += "</exch:application-reference>\n";
  }
  out += "<exch:priority-claims>\n";
  for (const auto& c : record.claims) {
    out += "<exch:priority-claim>";
    write_identifier(out, c);
    out += "</exch:priority-claim>\n";
  }
  out += "</exch:priority-claims>\n</exch:bibliographic-data>\n</exch:exchange-document>\n";
  return out;
}

}  // namespace patbitext::ingest
