#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "patbitext/align.hpp"
#include "patbitext/error.hpp"
#include "patbitext/family.hpp"
#include "patbitext/lexicon.hpp"
#include "patbitext/segment.hpp"

namespace patbitext::corpusio {

namespace fs = std::filesystem;

inline constexpr std::string_view kFormatVersion = "patbitext-corpus 1";

// "japanese<TAB>english" per line, '#' comments. Lines without exactly two
// fields are skipped and reported as MalformedLine.
align::BilingualLexicon parse_lexicon(std::string_view content, Diagnostics* diag = nullptr);
align::BilingualLexicon read_lexicon(const fs::path& path, Diagnostics* diag = nullptr);

using TranslationMap = std::unordered_map<std::string, std::vector<std::string>>;

// "sentence_id<TAB>english text" per line; text is tokenized with
// tokenize_en. A repeated id replaces the earlier one (DuplicateId warning).
TranslationMap parse_translations(std::string_view content, Diagnostics* diag = nullptr);
TranslationMap read_translations(const fs::path& path, Diagnostics* diag = nullptr);

// 64-bit FNV-1a as 16 lower-case hex digits.
std::string stable_hash(std::string_view s);

// root/
//   FORMAT_VERSION  pairs.tsv  ipc.tsv
//   docs/<h0h1>/<h2h3>/<pair_id>.{ja.txt,en.txt,align}
// where h0..h3 are the first hex digits of stable_hash(pair_id). With gzip
// the per-pair names carry a ".gz" suffix.
class CorpusLayout {
 public:
  explicit CorpusLayout(fs::path root, bool gzip = false) : root_(std::move(root)), gzip_(gzip) {}

  const fs::path& root() const { return root_; }
  bool gzip() const { return gzip_; }

  static std::string shard(std::string_view pair_id);
  fs::path pair_dir(std::string_view pair_id) const;
  fs::path ja_text(std::string_view pair_id) const { return pair_file(pair_id, ".ja.txt"); }
  fs::path en_text(std::string_view pair_id) const { return pair_file(pair_id, ".en.txt"); }
  fs::path alignment(std::string_view pair_id) const { return pair_file(pair_id, ".align"); }
  fs::path pairs_tsv() const { return root_ / "pairs.tsv"; }
  fs::path ipc_tsv() const { return root_ / "ipc.tsv"; }
  fs::path format_version() const { return root_ / "FORMAT_VERSION"; }

 private:
  fs::path pair_file(std::string_view pair_id, std::string_view suffix) const;

  fs::path root_;
  bool gzip_;
};

void write_format_version(const CorpusLayout& layout);

// One "sentence_id<TAB>text" line per record. Throws InvariantViolation when a
// text contains a TAB or line break.
std::string format_text(const std::vector<segment::SentenceRecord>& records);
// Throws MalformedRecord on lines that are not "<valid id><TAB>text".
std::vector<segment::SentenceRecord> parse_text(std::string_view content);
std::vector<segment::SentenceRecord> read_text(const fs::path& path);

void write_pair_text(const CorpusLayout& layout, std::string_view pair_id,
                     const std::vector<segment::SentenceRecord>& ja,
                     const std::vector<segment::SentenceRecord>& en);

// "ja,nums<TAB>en,nums<TAB>score" per link, sorted by first Japanese
// number; paper_compat drops the score column. Throws InvariantViolation on
// crossing or overlapping links.
std::string format_alignment(std::vector<align::AlignmentLink> links, bool paper_compat = false);
// Accepts both layouts; a missing score reads as 0. Throws MalformedRecord.
std::vector<align::AlignmentLink> parse_alignment(std::string_view content,
                                                  align::Method method = align::Method::Dict);
std::vector<align::AlignmentLink> read_alignment(const fs::path& path,
                                                 align::Method method = align::Method::Dict);
void write_alignment(const CorpusLayout& layout, std::string_view pair_id,
                     const std::vector<align::AlignmentLink>& links, bool paper_compat = false);

struct IpcRow {
  std::string pair_id;
  std::vector<std::string> codes;  // sorted, unique

  bool operator==(const IpcRow&) const = default;
};
IpcRow ipc_row(const family::DocumentPair& pair);
std::string format_ipc(std::vector<IpcRow> rows);
std::vector<IpcRow> parse_ipc(std::string_view content);
void write_ipc(const CorpusLayout& layout, const std::vector<family::DocumentPair>& pairs);

// Per-pair counts read back from a corpus.
struct PairCounts {
  family::PairRow pair;
  std::size_t ja_sentences = 0;
  std::size_t en_sentences = 0;
  std::size_t ja_aligned = 0;
  std::size_t en_aligned = 0;
  std::size_t links = 0;
};

PairCounts count_pair(const family::PairRow& row, const std::vector<segment::SentenceRecord>& ja,
                      const std::vector<segment::SentenceRecord>& en,
                      const std::vector<align::AlignmentLink>& links);

// Reads pairs.tsv and every listed pair's files. Missing per-pair files count
// as empty.
std::vector<PairCounts> scan_corpus(const CorpusLayout& layout);

// Rows are JP publication years (plus "unknown" for undated pairs) followed by
// a "sum" row. Each row holds sentence-pair and document-pair counts per route
// in kAllRoutes order.
struct YearlyRow {
  std::string label;
  std::array<std::size_t, 4> sentences{};
  std::array<std::size_t, 4> documents{};

  std::size_t sentence_total() const;
  std::size_t document_total() const;
};

struct YearlyStats {
  std::vector<YearlyRow> years;
  YearlyRow sum;

  std::string to_tsv() const;
  std::string to_table() const;
};

// Years run from the earliest to the latest publication year present, zero
// rows included.
YearlyStats yearly_stats(const std::vector<PairCounts>& pairs);

struct RateRow {
  std::string label;  // route name or "all"
  std::size_t ja_total = 0;
  std::size_t en_total = 0;
  std::size_t ja_aligned = 0;
  std::size_t en_aligned = 0;

  double ja_rate() const;
  double en_rate() const;
  double combined_rate() const;
};

struct ExtractionReport {
  std::vector<RateRow> routes;  // kAllRoutes order
  RateRow all;

  std::string to_tsv() const;
};

ExtractionReport extraction_rate(const std::vector<PairCounts>& pairs);

struct SubcorpusFilter {
  std::optional<segment::Part> part;
  std::optional<std::string> ipc_prefix;
  std::optional<std::pair<int, int>> year_range;  // inclusive JP publication years
  std::optional<family::RouteLabel> route;
};

// Writes "ja text<TAB>en text" per matching link, pairs in pair_id order.
// Sentences of a many-to-many link are joined with single spaces. Returns the
// number of lines written.
std::size_t extract_subcorpus(const CorpusLayout& layout, const SubcorpusFilter& filter,
                              std::ostream& out);

}  // namespace patbitext::corpusio
