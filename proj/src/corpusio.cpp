#include "patbitext/corpusio.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "patbitext/io.hpp"
#include "patbitext/text.hpp"

namespace patbitext::corpusio {

namespace {

bool is_comment_or_blank(std::string_view line) {
  const auto t = text::trim(line);
  return t.empty() || t.front() == '#';
}

int parse_positive(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) return -1;
  return v;
}

}  // namespace

align::BilingualLexicon parse_lexicon(std::string_view content, Diagnostics* diag) {
  align::BilingualLexicon lexicon;
  std::size_t line_no = 0;
  for (auto line : io::split_lines(content)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 2 || text::trim(fields[0]).empty() || text::trim(fields[1]).empty()) {
      if (diag) {
        diag->warn(Errc::MalformedLine, "lexicon line " + std::to_string(line_no) + ": expected 2 fields");
      }
      continue;
    }
    lexicon.add(text::trim(fields[0]), text::trim(fields[1]));
  }
  return lexicon;
}

align::BilingualLexicon read_lexicon(const fs::path& path, Diagnostics* diag) {
  return parse_lexicon(io::read_file(path), diag);
}

TranslationMap parse_translations(std::string_view content, Diagnostics* diag) {
  TranslationMap out;
  std::size_t line_no = 0;
  for (auto line : io::split_lines(content)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos ||
        text::trim(line.substr(0, tab)).empty()) {
      if (diag) {
        diag->warn(Errc::MalformedLine,
                   "translations line " + std::to_string(line_no) + ": expected 2 fields");
      }
      continue;
    }
    std::string id(text::trim(line.substr(0, tab)));
    auto tokens = segment::tokenize_en(line.substr(tab + 1));
    auto [it, inserted] = out.try_emplace(id, std::move(tokens));
    if (!inserted) {
      it->second = segment::tokenize_en(line.substr(tab + 1));
      if (diag) diag->warn(Errc::DuplicateId, "duplicate translation for " + id);
    }
  }
  return out;
}

TranslationMap read_translations(const fs::path& path, Diagnostics* diag) {
  return parse_translations(io::read_file(path), diag);
}

std::string stable_hash(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string CorpusLayout::shard(std::string_view pair_id) {
  const auto h = stable_hash(pair_id);
  return h.substr(0, 2) + "/" + h.substr(2, 2);
}

fs::path CorpusLayout::pair_dir(std::string_view pair_id) const {
  const auto h = stable_hash(pair_id);
  return root_ / "docs" / h.substr(0, 2) / h.substr(2, 2);
}

fs::path CorpusLayout::pair_file(std::string_view pair_id, std::string_view suffix) const {
  std::string name(pair_id);
  name += suffix;
  if (gzip_) name += ".gz";
  return pair_dir(pair_id) / name;
}

void write_format_version(const CorpusLayout& layout) {
  io::write_file(layout.format_version(), std::string(kFormatVersion) + "\n");
}

std::string format_text(const std::vector<segment::SentenceRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    if (r.text.find_first_of("\t\r\n") != std::string::npos ||
        r.sentence_id.find_first_of("\t\r\n") != std::string::npos) {
      throw InvariantViolation("sentence " + r.sentence_id + " contains a TAB or line break");
    }
    out += r.sentence_id;
    out += '\t';
    out += r.text;
    out += '\n';
  }
  return out;
}

std::vector<segment::SentenceRecord> parse_text(std::string_view content) {
  std::vector<segment::SentenceRecord> out;
  std::size_t line_no = 0;
  for (auto line : io::split_lines(content)) {
    ++line_no;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw MalformedRecord("text line " + std::to_string(line_no) + ": missing TAB");
    }
    auto fields = segment::parse_sentence_id(line.substr(0, tab));
    if (!fields) {
      throw MalformedRecord("text line " + std::to_string(line_no) + ": bad sentence id");
    }
    segment::SentenceRecord r;
    r.sentence_id = std::string(line.substr(0, tab));
    r.pair_id = std::move(fields->pair_id);
    r.part = fields->part;
    r.paragraph_no = fields->paragraph_no;
    r.sent_in_para = fields->sent_in_para;
    r.sent_in_doc = fields->sent_in_doc;
    r.text = std::string(line.substr(tab + 1));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<segment::SentenceRecord> read_text(const fs::path& path) {
  return parse_text(io::read_file(path));
}

void write_pair_text(const CorpusLayout& layout, std::string_view pair_id,
                     const std::vector<segment::SentenceRecord>& ja,
                     const std::vector<segment::SentenceRecord>& en) {
  io::write_file(layout.ja_text(pair_id), format_text(ja), layout.gzip());
  io::write_file(layout.en_text(pair_id), format_text(en), layout.gzip());
}

std::string format_alignment(std::vector<align::AlignmentLink> links, bool paper_compat) {
  std::stable_sort(links.begin(), links.end(), [](const auto& a, const auto& b) {
    return a.ja_sents.front() < b.ja_sents.front();
  });
  align::validate_links(links);
  std::string out;
  char score[32];
  for (const auto& link : links) {
    for (std::size_t i = 0; i < link.ja_sents.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(link.ja_sents[i]);
    }
    out += '\t';
    for (std::size_t i = 0; i < link.en_sents.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(link.en_sents[i]);
    }
    if (!paper_compat) {
      std::snprintf(score, sizeof score, "\t%.4f", link.score);
      out += score;
    }
    out += '\n';
  }
  return out;
}

std::vector<align::AlignmentLink> parse_alignment(std::string_view content, align::Method method) {
  std::vector<align::AlignmentLink> out;
  std::size_t line_no = 0;
  for (auto line : io::split_lines(content)) {
    ++line_no;
    const auto where = "alignment line " + std::to_string(line_no);
    const auto fields = text::split(line, '\t');
    if (fields.size() != 2 && fields.size() != 3) throw MalformedRecord(where + ": expected 2 or 3 fields");
    align::AlignmentLink link;
    link.method = method;
    auto numbers = [&](std::string_view field, std::vector<int>& dst) {
      for (auto item : text::split(field, ',')) {
        const int v = parse_positive(item);
        if (v < 0) throw MalformedRecord(where + ": bad sentence number '" + std::string(item) + "'");
        dst.push_back(v);
      }
    };
    numbers(fields[0], link.ja_sents);
    numbers(fields[1], link.en_sents);
    if (fields.size() == 3) {
      const std::string s(fields[2]);
      char* end = nullptr;
      link.score = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size()) throw MalformedRecord(where + ": bad score");
    }
    out.push_back(std::move(link));
  }
  align::validate_links(out);
  return out;
}

std::vector<align::AlignmentLink> read_alignment(const fs::path& path, align::Method method) {
  return parse_alignment(io::read_file(path), method);
}

void write_alignment(const CorpusLayout& layout, std::string_view pair_id,
                     const std::vector<align::AlignmentLink>& links, bool paper_compat) {
  io::write_file(layout.alignment(pair_id), format_alignment(links, paper_compat), layout.gzip());
}

IpcRow ipc_row(const family::DocumentPair& pair) {
  std::set<std::string> codes;
  if (pair.jp_doc) codes.insert(pair.jp_doc->ipc_codes.begin(), pair.jp_doc->ipc_codes.end());
  if (pair.us_doc) codes.insert(pair.us_doc->ipc_codes.begin(), pair.us_doc->ipc_codes.end());
  return {pair.pair_id, {codes.begin(), codes.end()}};
}

std::string format_ipc(std::vector<IpcRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.pair_id < b.pair_id; });
  std::string out;
  for (const auto& r : rows) {
    out += r.pair_id;
    out += '\t';
    out += text::join(r.codes, ",");
    out += '\n';
  }
  return out;
}

std::vector<IpcRow> parse_ipc(std::string_view content) {
  std::vector<IpcRow> out;
  std::size_t line_no = 0;
  for (auto line : io::split_lines(content)) {
    ++line_no;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 2) {
      throw MalformedRecord("ipc line " + std::to_string(line_no) + ": expected 2 fields");
    }
    IpcRow row{std::string(fields[0]), {}};
    if (!fields[1].empty()) {
      for (auto code : text::split(fields[1], ',')) row.codes.emplace_back(code);
    }
    out.push_back(std::move(row));
  }
  return out;
}

void write_ipc(const CorpusLayout& layout, const std::vector<family::DocumentPair>& pairs) {
  std::vector<IpcRow> rows;
  rows.reserve(pairs.size());
  for (const auto& p : pairs) rows.push_back(ipc_row(p));
  io::write_file(layout.ipc_tsv(), format_ipc(std::move(rows)));
}

PairCounts count_pair(const family::PairRow& row, const std::vector<segment::SentenceRecord>& ja,
                      const std::vector<segment::SentenceRecord>& en,
                      const std::vector<align::AlignmentLink>& links) {
  PairCounts c;
  c.pair = row;
  c.ja_sentences = ja.size();
  c.en_sentences = en.size();
  c.links = links.size();
  for (const auto& l : links) {
    c.ja_aligned += l.ja_sents.size();
    c.en_aligned += l.en_sents.size();
  }
  return c;
}

namespace {

std::string read_optional(const fs::path& path) {
  const auto found = io::resolve_maybe_gz(path);
  if (found.empty()) return {};
  return io::read_file(found);
}

fs::path plain_name(const fs::path& path) {
  if (path.extension() == ".gz") return path.parent_path() / path.stem();
  return path;
}

std::vector<family::PairRow> read_pairs(const CorpusLayout& layout) {
  return family::parse_pairs_tsv(io::read_file(layout.pairs_tsv()));
}

}  // namespace

std::vector<PairCounts> scan_corpus(const CorpusLayout& layout) {
  std::vector<PairCounts> out;
  for (const auto& row : read_pairs(layout)) {
    const auto ja = parse_text(read_optional(plain_name(layout.ja_text(row.pair_id))));
    const auto en = parse_text(read_optional(plain_name(layout.en_text(row.pair_id))));
    const auto links = parse_alignment(read_optional(plain_name(layout.alignment(row.pair_id))));
    out.push_back(count_pair(row, ja, en, links));
  }
  return out;
}

std::size_t YearlyRow::sentence_total() const {
  std::size_t n = 0;
  for (auto v : sentences) n += v;
  return n;
}

std::size_t YearlyRow::document_total() const {
  std::size_t n = 0;
  for (auto v : documents) n += v;
  return n;
}

namespace {

std::vector<std::string> yearly_header() {
  std::vector<std::string> h{"year"};
  for (auto r : family::kAllRoutes) h.push_back("sent_" + std::string(family::route_name(r)));
  for (auto r : family::kAllRoutes) h.push_back("doc_" + std::string(family::route_name(r)));
  h.push_back("sent_total");
  h.push_back("doc_total");
  return h;
}

std::vector<std::string> yearly_cells(const YearlyRow& row) {
  std::vector<std::string> cells{row.label};
  for (auto v : row.sentences) cells.push_back(std::to_string(v));
  for (auto v : row.documents) cells.push_back(std::to_string(v));
  cells.push_back(std::to_string(row.sentence_total()));
  cells.push_back(std::to_string(row.document_total()));
  return cells;
}

std::size_t route_index(family::RouteLabel route) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (family::kAllRoutes[i] == route) return i;
  }
  return 0;
}

}  // namespace

std::string YearlyStats::to_tsv() const {
  std::string out = text::join(yearly_header(), "\t") + "\n";
  for (const auto& row : years) out += text::join(yearly_cells(row), "\t") + "\n";
  out += text::join(yearly_cells(sum), "\t") + "\n";
  return out;
}

std::string YearlyStats::to_table() const {
  std::vector<std::vector<std::string>> grid{yearly_header()};
  for (const auto& row : years) grid.push_back(yearly_cells(row));
  grid.push_back(yearly_cells(sum));
  std::vector<std::size_t> width(grid.front().size(), 0);
  for (const auto& r : grid) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& r) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) line += "  ";
      const std::string pad(width[c] - r[c].size(), ' ');
      line += c == 0 ? r[c] + pad : pad + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  };
  emit(grid.front());
  std::size_t rule = 0;
  for (auto w : width) rule += w;
  out += std::string(rule + 2 * (width.size() - 1), '-') + "\n";
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) emit(grid[i]);
  out += std::string(rule + 2 * (width.size() - 1), '-') + "\n";
  emit(grid.back());
  return out;
}

YearlyStats yearly_stats(const std::vector<PairCounts>& pairs) {
  std::map<int, YearlyRow> by_year;
  YearlyRow unknown{"unknown", {}, {}};
  bool any_unknown = false;
  YearlyStats out;
  out.sum.label = "sum";
  for (const auto& p : pairs) {
    const std::size_t r = route_index(p.pair.route);
    YearlyRow* row;
    if (p.pair.jp_publication_date) {
      row = &by_year[p.pair.jp_publication_date->year];
    } else {
      row = &unknown;
      any_unknown = true;
    }
    row->sentences[r] += p.links;
    row->documents[r] += 1;
    out.sum.sentences[r] += p.links;
    out.sum.documents[r] += 1;
  }
  if (!by_year.empty()) {
    for (int y = by_year.begin()->first; y <= by_year.rbegin()->first; ++y) {
      YearlyRow row = by_year.count(y) ? by_year[y] : YearlyRow{};
      row.label = std::to_string(y);
      out.years.push_back(row);
    }
  }
  if (any_unknown) out.years.push_back(unknown);
  return out;
}

namespace {
double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

double RateRow::ja_rate() const { return ratio(ja_aligned, ja_total); }
double RateRow::en_rate() const { return ratio(en_aligned, en_total); }
double RateRow::combined_rate() const {
  return ratio(ja_aligned + en_aligned, ja_total + en_total);
}

std::string ExtractionReport::to_tsv() const {
  std::string out =
      "route\tja_sentences\tja_aligned\tja_rate\ten_sentences\ten_aligned\ten_rate\tcombined_rate\n";
  char buf[256];
  auto emit = [&](const RateRow& r) {
    std::snprintf(buf, sizeof buf, "%s\t%zu\t%zu\t%.4f\t%zu\t%zu\t%.4f\t%.4f\n", r.label.c_str(),
                  r.ja_total, r.ja_aligned, r.ja_rate(), r.en_total, r.en_aligned, r.en_rate(),
                  r.combined_rate());
    out += buf;
  };
  for (const auto& r : routes) emit(r);
  emit(all);
  return out;
}

ExtractionReport extraction_rate(const std::vector<PairCounts>& pairs) {
  ExtractionReport out;
  for (auto r : family::kAllRoutes) out.routes.push_back({std::string(family::route_name(r))});
  out.all.label = "all";
  for (const auto& p : pairs) {
    for (RateRow* row : {&out.routes[route_index(p.pair.route)], &out.all}) {
      row->ja_total += p.ja_sentences;
      row->en_total += p.en_sentences;
      row->ja_aligned += p.ja_aligned;
      row->en_aligned += p.en_aligned;
    }
  }
  return out;
}

std::size_t extract_subcorpus(const CorpusLayout& layout, const SubcorpusFilter& filter,
                              std::ostream& out) {
  std::map<std::string, std::vector<std::string>> ipc;
  if (filter.ipc_prefix) {
    for (auto& row : parse_ipc(read_optional(layout.ipc_tsv()))) ipc[row.pair_id] = std::move(row.codes);
  }
  auto rows = read_pairs(layout);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.pair_id < b.pair_id; });
  std::size_t written = 0;
  for (const auto& row : rows) {
    if (filter.route && row.route != *filter.route) continue;
    if (filter.year_range) {
      if (!row.jp_publication_date) continue;
      const int y = row.jp_publication_date->year;
      if (y < filter.year_range->first || y > filter.year_range->second) continue;
    }
    if (filter.ipc_prefix) {
      const auto it = ipc.find(row.pair_id);
      if (it == ipc.end()) continue;
      const bool hit = std::any_of(it->second.begin(), it->second.end(), [&](const std::string& c) {
        return c.compare(0, filter.ipc_prefix->size(), *filter.ipc_prefix) == 0;
      });
      if (!hit) continue;
    }
    const auto ja = parse_text(read_optional(plain_name(layout.ja_text(row.pair_id))));
    const auto en = parse_text(read_optional(plain_name(layout.en_text(row.pair_id))));
    const auto links = parse_alignment(read_optional(plain_name(layout.alignment(row.pair_id))));
    std::map<int, const segment::SentenceRecord*> ja_by_no;
    std::map<int, const segment::SentenceRecord*> en_by_no;
    for (const auto& r : ja) ja_by_no[r.sent_in_doc] = &r;
    for (const auto& r : en) en_by_no[r.sent_in_doc] = &r;
    for (const auto& link : links) {
      const auto first = ja_by_no.find(link.ja_sents.front());
      if (first == ja_by_no.end()) {
        throw MalformedRecord(row.pair_id + ": alignment refers to missing Japanese sentence " +
                              std::to_string(link.ja_sents.front()));
      }
      if (filter.part && first->second->part != *filter.part) continue;
      auto join = [&row](const std::vector<int>& nums,
                         const std::map<int, const segment::SentenceRecord*>& by_no) {
        std::string s;
        for (int n : nums) {
          const auto it = by_no.find(n);
          if (it == by_no.end()) {
            throw MalformedRecord(row.pair_id + ": alignment refers to missing sentence " +
                                  std::to_string(n));
          }
          if (!s.empty()) s += ' ';
          s += it->second->text;
        }
        return s;
      };
      out << join(link.ja_sents, ja_by_no) << '\t' << join(link.en_sents, en_by_no) << '\n';
      ++written;
    }
  }
  return written;
}

}  // namespace patbitext::corpusio
