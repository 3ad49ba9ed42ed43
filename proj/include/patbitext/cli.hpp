#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "patbitext/align.hpp"
#include "patbitext/corpusio.hpp"
#include "patbitext/error.hpp"
#include "patbitext/fixtures.hpp"
#include "patbitext/log.hpp"

namespace patbitext::cli {

namespace fs = std::filesystem;

struct PipelineConfig {
  fs::path jpo;
  fs::path uspto;
  fs::path docdb;
  fs::path out;                  // corpus root
  std::optional<fs::path> store; // parsed-record store; default <out>/store
  align::Method mode = align::Method::Dict;
  fs::path lexicon;
  fs::path translations;
  std::optional<fs::path> nonbreaking_prefixes;
  align::AlignParams params;
  unsigned threads = 1;
  double min_score = 0.0;  // links scoring below are not written
  bool paper_compat = false;
  bool gzip = false;
  LogLevel log_level = LogLevel::Info;
  std::optional<std::size_t> max_warnings;

  fs::path store_dir() const { return store ? *store : out / "store"; }
};

struct StageReport {
  std::string stage;
  std::map<std::string, long long> counts;
  Diagnostics diag;
};

// Each stage checks its input paths up front and throws UsageError naming
// the first missing one.
StageReport cmd_parse(const PipelineConfig& config, Logger& log);
StageReport cmd_docalign(const PipelineConfig& config, Logger& log);
StageReport cmd_segment(const PipelineConfig& config, Logger& log);
StageReport cmd_align(const PipelineConfig& config, Logger& log);
// Writes stats/yearly.tsv, stats/yearly.txt and stats/extraction.tsv under the
// corpus root and prints the yearly table and extraction report to `out`.
StageReport cmd_stats(const PipelineConfig& config, Logger& log, std::ostream& out);
StageReport cmd_fixture(const fixtures::FixtureSpec& spec, const fs::path& out, Logger& log);
// parse, docalign, segment, align, stats.
std::vector<StageReport> cmd_run(const PipelineConfig& config, Logger& log, std::ostream& out);
StageReport cmd_extract(const PipelineConfig& config, const corpusio::SubcorpusFilter& filter,
                        std::ostream& out, Logger& log);

// Aligns one pair's sentences part by part; link numbers are sent_in_doc.
// Dict mode needs `lexicon`, mt mode `translations`.
std::vector<align::AlignmentLink> align_pair(const std::vector<segment::SentenceRecord>& ja,
                                             const std::vector<segment::SentenceRecord>& en,
                                             align::Method mode, const align::AlignParams& params,
                                             const align::BilingualLexicon* lexicon,
                                             const corpusio::TranslationMap* translations);

// Machine-readable error summary: {"error": <code>, "message": ..., "path": ...}.
std::string error_json(const Error& error);
std::string error_json(std::string_view code, std::string_view message);

}  // namespace patbitext::cli
