#include "patbitext/store.hpp"

#include <algorithm>
#include <tuple>

#include "json.hpp"
#include "patbitext/error.hpp"
#include "patbitext/io.hpp"

namespace patbitext::store {

namespace {

using nlohmann::ordered_json;

ordered_json id_to_json(const DocumentIdentifier& id) {
  ordered_json j;
  j["country"] = id.country;
  j["doc_number"] = id.doc_number;
  j["kind"] = id.kind ? std::string(1, *id.kind) : std::string();
  j["date"] = id.date ? id.date->to_string() : std::string();
  return j;
}

DocumentIdentifier id_from_json(const ordered_json& j) {
  DocumentIdentifier id;
  id.country = j.at("country").get<std::string>();
  id.doc_number = j.at("doc_number").get<std::string>();
  if (const auto k = j.at("kind").get<std::string>(); !k.empty()) id.kind = k.front();
  if (const auto d = j.at("date").get<std::string>(); !d.empty()) {
    id.date = Date::parse(d);
    if (!id.date) throw MalformedRecord("store: invalid date " + d);
  }
  return id;
}

ordered_json optional_id(const std::optional<DocumentIdentifier>& id) {
  return id ? id_to_json(*id) : ordered_json(nullptr);
}

std::optional<DocumentIdentifier> optional_id_from(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return id_from_json(j);
}

template <class T>
std::tuple<std::string, std::string> sort_key(const T& id) {
  return {id.country, id.doc_number};
}

}  // namespace

std::string to_json_line(const PatentDocument& doc) {
  ordered_json j;
  j["office"] = doc.office == Office::Jpo ? "JPO" : "USPTO";
  j["gazette_kind"] = doc.gazette_kind ? std::string(1, gazette_letter(*doc.gazette_kind)) : "";
  j["publication"] = id_to_json(doc.publication);
  j["application"] = id_to_json(doc.application);
  j["pct_filing"] = optional_id(doc.pct_filing);
  j["pct_publication"] = optional_id(doc.pct_publication);
  j["ipc_codes"] = doc.ipc_codes;
  j["title"] = doc.parts.title;
  j["abstract"] = doc.parts.abstract;
  j["description"] = doc.parts.description;
  j["claims"] = doc.parts.claims;
  return j.dump();
}

std::string to_json_line(const PriorityRecord& record) {
  ordered_json j;
  j["subject"] = id_to_json(record.subject);
  ordered_json claims = ordered_json::array();
  for (const auto& c : record.claims) claims.push_back(id_to_json(c));
  j["claims"] = std::move(claims);
  j["application"] = optional_id(record.application);
  j["application_kind"] =
      record.application_kind ? std::string(1, *record.application_kind) : std::string();
  return j.dump();
}

PatentDocument document_from_json(const std::string& line) {
  try {
    const auto j = ordered_json::parse(line);
    PatentDocument doc;
    doc.office = j.at("office").get<std::string>() == "JPO" ? Office::Jpo : Office::Uspto;
    if (const auto k = j.at("gazette_kind").get<std::string>(); !k.empty()) {
      doc.gazette_kind = gazette_from_letter(k.front());
    }
    doc.publication = id_from_json(j.at("publication"));
    doc.application = id_from_json(j.at("application"));
    doc.pct_filing = optional_id_from(j.at("pct_filing"));
    doc.pct_publication = optional_id_from(j.at("pct_publication"));
    doc.ipc_codes = j.at("ipc_codes").get<std::vector<std::string>>();
    doc.parts.title = j.at("title").get<std::string>();
    doc.parts.abstract = j.at("abstract").get<std::vector<std::string>>();
    doc.parts.description = j.at("description").get<std::vector<std::string>>();
    doc.parts.claims = j.at("claims").get<std::vector<std::string>>();
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(std::string("store: ") + e.what());
  }
}

PriorityRecord priority_from_json(const std::string& line) {
  try {
    const auto j = ordered_json::parse(line);
    PriorityRecord r;
    r.subject = id_from_json(j.at("subject"));
    for (const auto& c : j.at("claims")) r.claims.push_back(id_from_json(c));
    r.application = optional_id_from(j.at("application"));
    if (const auto k = j.at("application_kind").get<std::string>(); !k.empty()) {
      r.application_kind = k.front();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(std::string("store: ") + e.what());
  }
}

void write_store(const std::filesystem::path& dir, RecordStore store) {
  auto by_publication = [](const PatentDocument& a, const PatentDocument& b) {
    return sort_key(a.publication) < sort_key(b.publication);
  };
  std::stable_sort(store.jpo.begin(), store.jpo.end(), by_publication);
  std::stable_sort(store.uspto.begin(), store.uspto.end(), by_publication);
  std::stable_sort(store.docdb.begin(), store.docdb.end(),
                   [](const PriorityRecord& a, const PriorityRecord& b) {
                     return sort_key(a.subject) < sort_key(b.subject);
                   });
  auto dump = [](const auto& items) {
    std::string out;
    for (const auto& item : items) {
      out += to_json_line(item);
      out += '\n';
    }
    return out;
  };
  io::write_file(dir / "jpo.jsonl", dump(store.jpo));
  io::write_file(dir / "uspto.jsonl", dump(store.uspto));
  io::write_file(dir / "docdb.jsonl", dump(store.docdb));
}

RecordStore read_store(const std::filesystem::path& dir) {
  RecordStore store;
  const auto jpo = io::read_file(dir / "jpo.jsonl");
  const auto uspto = io::read_file(dir / "uspto.jsonl");
  const auto docdb = io::read_file(dir / "docdb.jsonl");
  for (auto line : io::split_lines(jpo)) {
    if (!line.empty()) store.jpo.push_back(document_from_json(std::string(line)));
  }
  for (auto line : io::split_lines(uspto)) {
    if (!line.empty()) store.uspto.push_back(document_from_json(std::string(line)));
  }
  for (auto line : io::split_lines(docdb)) {
    if (!line.empty()) store.docdb.push_back(priority_from_json(std::string(line)));
  }
  return store;
}

}  // namespace patbitext::store
