#include "patbitext/cli.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "patbitext/family.hpp"
#include "patbitext/ingest.hpp"
#include "patbitext/io.hpp"
#include "patbitext/parallel.hpp"
#include "patbitext/segment.hpp"
#include "patbitext/store.hpp"
#include "patbitext/text.hpp"

namespace patbitext::cli {

namespace {

void require_path(const fs::path& path, std::string_view what) {
  std::error_code ec;
  if (path.empty()) throw UsageError(std::string(what) + " path not given");
  if (!fs::exists(path, ec)) throw IoError(path.string(), std::string(what) + " does not exist");
}

void require_file(const fs::path& path, std::string_view what) {
  if (path.empty()) throw UsageError(std::string(what) + " path not given");
  if (io::resolve_maybe_gz(path).empty()) {
    throw IoError(path.string(), std::string(what) + " does not exist");
  }
}

bool is_record_file(const fs::path& path) {
  const auto name = path.filename().string();
  auto ends_with = [&name](std::string_view suffix) {
    return name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".xml") || ends_with(".xml.gz");
}

std::vector<fs::path> record_files(const fs::path& input) {
  std::error_code ec;
  if (!fs::is_directory(input, ec)) return {input};
  std::vector<fs::path> out;
  for (auto& p : io::list_files(input)) {
    if (is_record_file(p)) out.push_back(std::move(p));
  }
  return out;
}

void log_warnings(Logger& log, std::string_view stage, const Diagnostics& diag) {
  for (const auto& w : diag.items()) {
    log.log(LogLevel::Warn, stage, errc_name(w.code), {}, {}, w.message);
  }
}

StageReport finish(Logger& log, StageReport report) {
  report.counts["warnings"] = static_cast<long long>(report.diag.count());
  log_warnings(log, report.stage, report.diag);
  log.log(LogLevel::Info, report.stage, "done", report.counts);
  return report;
}

std::string read_pairs_file(const corpusio::CorpusLayout& layout) {
  require_file(layout.pairs_tsv(), "pairs.tsv");
  return io::read_file(layout.pairs_tsv());
}

std::vector<segment::SentenceRecord> read_text_maybe_gz(const fs::path& plain) {
  const auto found = io::resolve_maybe_gz(plain);
  if (found.empty()) throw IoError(plain.string(), "text file does not exist");
  return corpusio::read_text(found);
}

}  // namespace

StageReport cmd_parse(const PipelineConfig& config, Logger& log) {
  require_path(config.jpo, "jpo input");
  require_path(config.uspto, "uspto input");
  require_path(config.docdb, "docdb input");
  log.log(LogLevel::Info, "parse", "start");

  enum class Kind { Jpo, Uspto, Docdb };
  std::vector<std::pair<Kind, fs::path>> tasks;
  for (auto& f : record_files(config.jpo)) tasks.emplace_back(Kind::Jpo, std::move(f));
  for (auto& f : record_files(config.uspto)) tasks.emplace_back(Kind::Uspto, std::move(f));
  for (auto& f : record_files(config.docdb)) tasks.emplace_back(Kind::Docdb, std::move(f));

  struct Result {
    std::vector<PatentDocument> docs;
    std::vector<PriorityRecord> records;
    Diagnostics diag;
  };
  std::vector<Result> results(tasks.size());
  const ingest::ParseOptions options;
  parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    auto& [kind, path] = tasks[i];
    auto& r = results[i];
    switch (kind) {
      case Kind::Jpo: r.docs = ingest::read_jpo_file(path, options, r.diag); break;
      case Kind::Uspto: r.docs = ingest::read_uspto_file(path, options, r.diag); break;
      case Kind::Docdb: r.records = ingest::read_docdb_file(path, options, r.diag); break;
    }
  });

  StageReport report{"parse", {}, {}};
  store::RecordStore store;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto& r = results[i];
    report.diag.merge(r.diag);
    auto& target = tasks[i].first == Kind::Jpo ? store.jpo : store.uspto;
    std::move(r.docs.begin(), r.docs.end(), std::back_inserter(target));
    std::move(r.records.begin(), r.records.end(), std::back_inserter(store.docdb));
  }
  report.counts["files"] = static_cast<long long>(tasks.size());
  report.counts["jpo"] = static_cast<long long>(store.jpo.size());
  report.counts["uspto"] = static_cast<long long>(store.uspto.size());
  report.counts["docdb"] = static_cast<long long>(store.docdb.size());
  store::write_store(config.store_dir(), std::move(store));
  return finish(log, std::move(report));
}

StageReport cmd_docalign(const PipelineConfig& config, Logger& log) {
  require_path(config.store_dir(), "record store");
  log.log(LogLevel::Info, "docalign", "start");
  const auto store = store::read_store(config.store_dir());
  std::vector<family::DocumentRef> jp;
  std::vector<family::DocumentRef> us;
  for (const auto& d : store.jpo) jp.push_back(std::make_shared<const PatentDocument>(d));
  for (const auto& d : store.uspto) us.push_back(std::make_shared<const PatentDocument>(d));
  auto result = family::align_documents(jp, us, store.docdb);

  const corpusio::CorpusLayout layout(config.out, config.gzip);
  std::vector<family::PairRow> rows;
  for (const auto& p : result.pairs) rows.push_back(family::to_row(p));
  io::write_file(layout.pairs_tsv(), family::pairs_to_tsv(rows));
  corpusio::write_ipc(layout, result.pairs);
  corpusio::write_format_version(layout);

  StageReport report{"docalign", {}, std::move(result.diag)};
  report.counts["pairs"] = static_cast<long long>(result.pairs.size());
  report.counts["discarded"] = static_cast<long long>(result.discarded.size());
  for (auto route : family::kAllRoutes) {
    report.counts[std::string(family::route_name(route))] = std::count_if(
        result.pairs.begin(), result.pairs.end(), [route](const auto& p) { return p.route == route; });
  }
  for (const auto& d : result.discarded) {
    log.log(LogLevel::Debug, "docalign", "discarded", {}, d.pair_id, family::route_name(d.route));
  }
  return finish(log, std::move(report));
}

StageReport cmd_segment(const PipelineConfig& config, Logger& log) {
  require_path(config.store_dir(), "record store");
  const corpusio::CorpusLayout layout(config.out, config.gzip);
  const auto rows = family::parse_pairs_tsv(read_pairs_file(layout));
  if (config.nonbreaking_prefixes) require_file(*config.nonbreaking_prefixes, "nonbreaking prefix list");
  log.log(LogLevel::Info, "segment", "start");
  const auto prefixes = config.nonbreaking_prefixes
                            ? segment::NonbreakingPrefixes::load(*config.nonbreaking_prefixes)
                            : segment::NonbreakingPrefixes::defaults();
  const auto store = store::read_store(config.store_dir());
  std::map<std::string, const PatentDocument*> jp_by_number;
  std::map<std::string, const PatentDocument*> us_by_number;
  for (const auto& d : store.jpo) jp_by_number.emplace(text::alnum_upper(d.publication.doc_number), &d);
  for (const auto& d : store.uspto) us_by_number.emplace(text::alnum_upper(d.publication.doc_number), &d);

  struct Result {
    std::size_t ja = 0;
    std::size_t en = 0;
    Diagnostics diag;
  };
  std::vector<Result> results(rows.size());
  const segment::SentenceSplitter ja_splitter = [](std::string_view p) { return segment::split_sentences_ja(p); };
  const segment::SentenceSplitter en_splitter = [&prefixes](std::string_view p) {
    return segment::split_sentences_en(p, prefixes);
  };
  parallel_for(rows.size(), config.threads, [&](std::size_t i) {
    const auto& row = rows[i];
    auto& r = results[i];
    const auto numbers = family::split_pair_id(row.pair_id);
    const auto jp = numbers ? jp_by_number.find(numbers->first) : jp_by_number.end();
    const auto us = numbers ? us_by_number.find(numbers->second) : us_by_number.end();
    if (jp == jp_by_number.end() || us == us_by_number.end()) {
      r.diag.warn(Errc::MalformedRecord, row.pair_id + ": document missing from record store");
      return;
    }
    const auto ja = segment::assign_ids(row.pair_id, segment::split_parts(*jp->second), ja_splitter);
    const auto en = segment::assign_ids(row.pair_id, segment::split_parts(*us->second), en_splitter);
    corpusio::write_pair_text(layout, row.pair_id, ja, en);
    r.ja = ja.size();
    r.en = en.size();
  });

  StageReport report{"segment", {}, {}};
  long long ja = 0;
  long long en = 0;
  for (auto& r : results) {
    ja += static_cast<long long>(r.ja);
    en += static_cast<long long>(r.en);
    report.diag.merge(r.diag);
  }
  report.counts["pairs"] = static_cast<long long>(rows.size());
  report.counts["ja_sentences"] = ja;
  report.counts["en_sentences"] = en;
  return finish(log, std::move(report));
}

std::vector<align::AlignmentLink> align_pair(const std::vector<segment::SentenceRecord>& ja,
                                             const std::vector<segment::SentenceRecord>& en,
                                             align::Method mode, const align::AlignParams& params,
                                             const align::BilingualLexicon* lexicon,
                                             const corpusio::TranslationMap* translations) {
  std::vector<align::AlignmentLink> out;
  for (auto part : segment::kPartOrder) {
    std::vector<const segment::SentenceRecord*> ja_part;
    std::vector<const segment::SentenceRecord*> en_part;
    for (const auto& r : ja) {
      if (r.part == part) ja_part.push_back(&r);
    }
    for (const auto& r : en) {
      if (r.part == part) en_part.push_back(&r);
    }
    if (ja_part.empty() || en_part.empty()) continue;

    std::vector<std::vector<std::string>> en_tokens;
    for (const auto* r : en_part) en_tokens.push_back(segment::tokenize_en(r->text));
    std::vector<align::AlignmentLink> links;
    if (mode == align::Method::Dict) {
      if (lexicon == nullptr) throw UsageError("dict alignment needs a lexicon");
      std::vector<std::vector<std::string>> ja_tokens;
      for (const auto* r : ja_part) ja_tokens.push_back(segment::tokenize_ja(r->text, *lexicon));
      links = align::align_dict(ja_tokens, en_tokens, *lexicon, params);
    } else {
      if (translations == nullptr) throw UsageError("mt alignment needs translations");
      std::vector<std::vector<std::string>> translated;
      for (const auto* r : ja_part) {
        auto it = translations->find(r->sentence_id);
        if (it != translations->end()) translated.push_back(it->second);
      }
      links = align::align_mt(translated, ja_part.size(), en_tokens, params);
    }
    for (auto& link : links) {
      for (auto& n : link.ja_sents) n = ja_part[static_cast<std::size_t>(n - 1)]->sent_in_doc;
      for (auto& n : link.en_sents) n = en_part[static_cast<std::size_t>(n - 1)]->sent_in_doc;
      out.push_back(std::move(link));
    }
  }
  return out;
}

StageReport cmd_align(const PipelineConfig& config, Logger& log) {
  const corpusio::CorpusLayout layout(config.out, config.gzip);
  const corpusio::CorpusLayout plain(config.out, false);
  const auto rows = family::parse_pairs_tsv(read_pairs_file(layout));
  config.params.validate();
  StageReport report{"align", {}, {}};
  align::BilingualLexicon lexicon;
  corpusio::TranslationMap translations;
  if (config.mode == align::Method::Dict) {
    require_file(config.lexicon, "lexicon");
    lexicon = corpusio::read_lexicon(config.lexicon, &report.diag);
  } else {
    require_file(config.translations, "translations");
    translations = corpusio::read_translations(config.translations, &report.diag);
  }
  log.log(LogLevel::Info, "align", "start", {}, {}, align::method_name(config.mode));

  struct Result {
    std::size_t links = 0;
    std::size_t filtered = 0;
    Diagnostics diag;
  };
  std::vector<Result> results(rows.size());
  parallel_for(rows.size(), config.threads, [&](std::size_t i) {
    const auto& id = rows[i].pair_id;
    auto& r = results[i];
    const auto ja = read_text_maybe_gz(plain.ja_text(id));
    const auto en = read_text_maybe_gz(plain.en_text(id));
    std::vector<align::AlignmentLink> links;
    try {
      links = align_pair(ja, en, config.mode, config.params, &lexicon, &translations);
    } catch (const LengthMismatch& e) {
      r.diag.warn(Errc::LengthMismatch, id + ": " + e.what());
    }
    const auto before = links.size();
    links.erase(std::remove_if(links.begin(), links.end(),
                               [&](const auto& l) { return l.score < config.min_score; }),
                links.end());
    r.filtered = before - links.size();
    r.links = links.size();
    corpusio::write_alignment(layout, id, links, config.paper_compat);
  });

  long long links = 0;
  long long filtered = 0;
  for (auto& r : results) {
    links += static_cast<long long>(r.links);
    filtered += static_cast<long long>(r.filtered);
    report.diag.merge(r.diag);
  }
  report.counts["pairs"] = static_cast<long long>(rows.size());
  report.counts["links"] = links;
  report.counts["below_min_score"] = filtered;
  return finish(log, std::move(report));
}

StageReport cmd_stats(const PipelineConfig& config, Logger& log, std::ostream& out) {
  const corpusio::CorpusLayout layout(config.out, config.gzip);
  require_file(layout.pairs_tsv(), "pairs.tsv");
  log.log(LogLevel::Info, "stats", "start");
  const auto pairs = corpusio::scan_corpus(layout);
  const auto yearly = corpusio::yearly_stats(pairs);
  const auto rates = corpusio::extraction_rate(pairs);
  io::write_file(config.out / "stats" / "yearly.tsv", yearly.to_tsv());
  io::write_file(config.out / "stats" / "yearly.txt", yearly.to_table());
  io::write_file(config.out / "stats" / "extraction.tsv", rates.to_tsv());
  out << yearly.to_table() << '\n' << rates.to_tsv();

  StageReport report{"stats", {}, {}};
  report.counts["pairs"] = static_cast<long long>(pairs.size());
  report.counts["sentence_pairs"] = static_cast<long long>(yearly.sum.sentence_total());
  return finish(log, std::move(report));
}

StageReport cmd_fixture(const fixtures::FixtureSpec& spec, const fs::path& out, Logger& log) {
  if (out.empty()) throw UsageError("output path not given");
  log.log(LogLevel::Info, "fixture", "start");
  const auto fixture = fixtures::generate(spec, out);
  StageReport report{"fixture", {}, {}};
  report.counts["pairs"] = static_cast<long long>(fixture.gold_pairs.size());
  report.counts["jpo"] = static_cast<long long>(fixture.jpo.size());
  report.counts["uspto"] = static_cast<long long>(fixture.uspto.size());
  report.counts["docdb"] = static_cast<long long>(fixture.docdb.size());
  return finish(log, std::move(report));
}

std::vector<StageReport> cmd_run(const PipelineConfig& config, Logger& log, std::ostream& out) {
  // Every input is checked before the first stage writes anything.
  require_path(config.jpo, "jpo input");
  require_path(config.uspto, "uspto input");
  require_path(config.docdb, "docdb input");
  if (config.mode == align::Method::Dict) {
    require_file(config.lexicon, "lexicon");
  } else {
    require_file(config.translations, "translations");
  }
  if (config.nonbreaking_prefixes) require_file(*config.nonbreaking_prefixes, "nonbreaking prefix list");
  config.params.validate();

  std::vector<StageReport> reports;
  reports.push_back(cmd_parse(config, log));
  reports.push_back(cmd_docalign(config, log));
  reports.push_back(cmd_segment(config, log));
  reports.push_back(cmd_align(config, log));
  reports.push_back(cmd_stats(config, log, out));
  return reports;
}

StageReport cmd_extract(const PipelineConfig& config, const corpusio::SubcorpusFilter& filter,
                        std::ostream& out, Logger& log) {
  const corpusio::CorpusLayout layout(config.out, config.gzip);
  require_file(layout.pairs_tsv(), "pairs.tsv");
  log.log(LogLevel::Info, "extract", "start");
  StageReport report{"extract", {}, {}};
  report.counts["lines"] = static_cast<long long>(corpusio::extract_subcorpus(layout, filter, out));
  return finish(log, std::move(report));
}

std::string error_json(const Error& error) {
  nlohmann::ordered_json j;
  j["error"] = std::string(errc_name(error.code()));
  j["message"] = error.what();
  if (const auto* io_error = dynamic_cast<const IoError*>(&error)) j["path"] = io_error->path();
  return j.dump();
}

std::string error_json(std::string_view code, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"] = std::string(code);
  j["message"] = std::string(message);
  return j.dump();
}

}  // namespace patbitext::cli
