#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "patbitext/corpusio.hpp"
#include "patbitext/io.hpp"
#include "patbitext/text.hpp"
#include "oracle.hpp"

namespace patbitext::corpusio {
namespace {

using align::AlignmentLink;
using family::PairRow;
using family::RouteLabel;
using segment::Part;
using segment::SentenceRecord;

AlignmentLink link(std::vector<int> ja, std::vector<int> en, double score = 0.5) {
  return {std::move(ja), std::move(en), score, align::Method::Dict};
}

SentenceRecord record(const std::string& pair_id, Part part, int para, int in_para, int in_doc,
                      std::string text) {
  SentenceRecord r;
  r.sentence_id = segment::make_sentence_id(pair_id, part, para, in_para, in_doc);
  r.pair_id = pair_id;
  r.part = part;
  r.paragraph_no = para;
  r.sent_in_para = in_para;
  r.sent_in_doc = in_doc;
  r.text = std::move(text);
  return r;
}

TEST(Lexicon, ParseRules) {
  Diagnostics diag;
  const auto lex = parse_lexicon("# c\n発明\tinvention\n発明\tInvent\n\na\tb\tc\td\n", &diag);
  EXPECT_EQ(lex.key_count(), 1u);
  EXPECT_EQ(lex.entry_count(), 2u);
  ASSERT_NE(lex.lookup("発明"), nullptr);
  EXPECT_EQ(lex.lookup("発明")->size(), 2u);
  EXPECT_TRUE(lex.links("発明", "INVENT"));
  EXPECT_EQ(diag.count(Errc::MalformedLine), 1u);
}

TEST(Lexicon, EmptyFile) {
  testing::TempDir dir("lex");
  io::write_file(dir / "lex.tsv", "");
  EXPECT_EQ(read_lexicon(dir / "lex.tsv").entry_count(), 0u);
}

TEST(Translations, ParseAndDuplicates) {
  Diagnostics diag;
  const auto t = parse_translations("a\tThe cat.\nb\tx\nc\ty\n", &diag);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.at("a"), (std::vector<std::string>{"the", "cat", "."}));
  const auto d = parse_translations("a\tone\nb\ttwo\na\tthree\n", &diag);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.at("a"), std::vector<std::string>{"three"});
  EXPECT_EQ(diag.count(Errc::DuplicateId), 1u);
  parse_translations("bad line\n", &diag);
  EXPECT_EQ(diag.count(Errc::MalformedLine), 1u);
}

TEST(Translations, MissingFileNamesPath) {
  try {
    read_translations("/nonexistent/tr.tsv");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), "/nonexistent/tr.tsv");
  }
}

TEST(Layout, ShardFromHash) {
  const std::string id = "JP2021000998-US20210139186";
  const auto h = stable_hash(id);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(CorpusLayout::shard(id), h.substr(0, 2) + "/" + h.substr(2, 2));
  const CorpusLayout layout("/c");
  EXPECT_EQ(layout.alignment(id), fs::path("/c/docs") / h.substr(0, 2) / h.substr(2, 2) / (id + ".align"));
  EXPECT_EQ(CorpusLayout("/c", true).ja_text(id).filename(), id + ".ja.txt.gz");
  EXPECT_EQ(stable_hash(""), "cbf29ce484222325");
}

TEST(PairText, LinesAndRoundTrip) {
  testing::TempDir dir("text");
  const CorpusLayout layout(dir.path());
  const std::string id = "JP1-US2";
  const std::vector<SentenceRecord> ja{record(id, Part::Title, 1, 1, 1, "題名"),
                                       record(id, Part::Claim, 1, 1, 2, "請求項。")};
  write_pair_text(layout, id, ja, {});
  EXPECT_EQ(io::read_file(layout.ja_text(id)),
            "JP1-US2:title:p0001:s01:n00001\t題名\nJP1-US2:claim:p0001:s01:n00002\t請求項。\n");
  EXPECT_EQ(fs::file_size(layout.en_text(id)), 0u);
  EXPECT_EQ(read_text(layout.ja_text(id)), ja);
}

TEST(PairText, RejectsTabsAndBadIds) {
  EXPECT_THROW(format_text({record("JP1-US2", Part::Title, 1, 1, 1, "a\tb")}), InvariantViolation);
  EXPECT_THROW(parse_text("nope\ttext\n"), MalformedRecord);
}

TEST(Alignment, LineShape) {
  EXPECT_EQ(format_alignment({link({5}, {6, 7}, 0.81234)}), "5\t6,7\t0.8123\n");
  EXPECT_EQ(format_alignment({link({5}, {6, 7}, 0.81234)}, true), "5\t6,7\n");
  EXPECT_EQ(format_alignment({}), "");
}

TEST(Alignment, SortsAndRejectsCrossing) {
  EXPECT_EQ(format_alignment({link({3}, {3}), link({1, 2}, {1})}), "1,2\t1\t0.5000\n3\t3\t0.5000\n");
  EXPECT_THROW(format_alignment({link({1}, {2}), link({2}, {1})}), InvariantViolation);
}

TEST(Alignment, ParseBothLayouts) {
  const auto a = parse_alignment("1\t1\n2,3\t2\t0.2500\n", align::Method::Mt);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].score, 0.0);
  EXPECT_EQ(a[1].ja_sents, (std::vector<int>{2, 3}));
  EXPECT_EQ(a[1].score, 0.25);
  EXPECT_EQ(a[1].method, align::Method::Mt);
  EXPECT_THROW(parse_alignment("1\n"), MalformedRecord);
  EXPECT_THROW(parse_alignment("1\tx\n"), MalformedRecord);
}

TEST(Alignment, GzipRoundTrip) {
  testing::TempDir dir("gz");
  const CorpusLayout layout(dir.path(), true);
  const std::vector<AlignmentLink> links{link({1}, {1}, 0.25), link({2}, {2, 3}, 1.0)};
  write_alignment(layout, "JP1-US2", links);
  EXPECT_EQ(read_alignment(layout.alignment("JP1-US2")), links);
}

TEST(Ipc, UnionSortedByPair) {
  auto jp = std::make_shared<PatentDocument>();
  auto us = std::make_shared<PatentDocument>();
  jp->ipc_codes = {"G06F 16/00"};
  us->ipc_codes = {"H04L", "G06F 16/00"};
  family::DocumentPair a{"JPB-USB", jp, us, RouteLabel::JpUs, {}};
  family::DocumentPair b{"JPA-USA", std::make_shared<PatentDocument>(), std::make_shared<PatentDocument>(),
                         RouteLabel::Pct, {}};
  EXPECT_EQ(format_ipc({ipc_row(a), ipc_row(b)}), "JPA-USA\t\nJPB-USB\tG06F 16/00,H04L\n");
  const auto rows = parse_ipc("JPA-USA\t\nJPB-USB\tG06F 16/00,H04L\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].codes.empty());
  EXPECT_EQ(rows[1].codes, (std::vector<std::string>{"G06F 16/00", "H04L"}));
}

PairCounts counts(const char* pair_id, RouteLabel route, const char* date, std::size_t links) {
  PairCounts c;
  c.pair = PairRow{pair_id, route, "", "", date ? Date::parse(date) : std::nullopt, std::nullopt};
  c.links = links;
  return c;
}

TEST(YearlyStats, HandCountedExample) {
  const auto s = yearly_stats({counts("a", RouteLabel::Pct, "20200101", 10),
                               counts("b", RouteLabel::Pct, "20201231", 7),
                               counts("c", RouteLabel::JpUs, "20210501", 5)});
  ASSERT_EQ(s.years.size(), 2u);
  EXPECT_EQ(s.years[0].label, "2020");
  EXPECT_EQ(s.years[0].documents[3], 2u);
  EXPECT_EQ(s.years[0].sentences[3], 17u);
  EXPECT_EQ(s.years[1].documents[0], 1u);
  EXPECT_EQ(s.years[1].sentences[0], 5u);
  EXPECT_EQ(s.sum.sentence_total(), 22u);
  EXPECT_EQ(s.sum.document_total(), 3u);
  EXPECT_EQ(s.to_tsv(),
            "year\tsent_jp-us\tsent_jp-x-us\tsent_us-jp\tsent_pct\tdoc_jp-us\tdoc_jp-x-us\tdoc_us-jp\tdoc_pct"
            "\tsent_total\tdoc_total\n"
            "2020\t0\t0\t0\t17\t0\t0\t0\t2\t17\t2\n"
            "2021\t5\t0\t0\t0\t1\t0\t0\t0\t5\t1\n"
            "sum\t5\t0\t0\t17\t1\t0\t0\t2\t22\t3\n");
}

TEST(YearlyStats, EmptyCorpus) {
  const auto s = yearly_stats({});
  EXPECT_TRUE(s.years.empty());
  EXPECT_EQ(s.sum.sentence_total(), 0u);
  const auto tsv = s.to_tsv();
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 2);
}

TEST(YearlyStats, GapYearsAndUnknown) {
  const auto s = yearly_stats({counts("a", RouteLabel::Pct, "20180101", 1),
                               counts("b", RouteLabel::UsJp, "20200101", 2),
                               counts("c", RouteLabel::UsJp, nullptr, 3)});
  ASSERT_EQ(s.years.size(), 4u);
  EXPECT_EQ(s.years[1].label, "2019");
  EXPECT_EQ(s.years[1].document_total(), 0u);
  EXPECT_EQ(s.years[3].label, "unknown");
  EXPECT_EQ(s.years[3].sentences[2], 3u);
}

TEST(YearlyStats, MarginalsHold) {
  std::mt19937 rng(4);
  std::vector<PairCounts> pairs;
  for (int i = 0; i < 200; ++i) {
    const std::string date = std::to_string(2000 + rng() % 22) + "0615";
    pairs.push_back(counts("p", family::kAllRoutes[rng() % 4], rng() % 10 ? date.c_str() : nullptr,
                           rng() % 50));
  }
  const auto s = yearly_stats(pairs);
  for (std::size_t r = 0; r < 4; ++r) {
    std::size_t sents = 0, docs = 0;
    for (const auto& y : s.years) {
      sents += y.sentences[r];
      docs += y.documents[r];
    }
    EXPECT_EQ(sents, s.sum.sentences[r]);
    EXPECT_EQ(docs, s.sum.documents[r]);
  }
  std::size_t grand = 0;
  for (auto v : s.sum.sentences) grand += v;
  EXPECT_EQ(grand, s.sum.sentence_total());
  EXPECT_EQ(s.sum.document_total(), pairs.size());
}

TEST(ExtractionRate, Ratios) {
  PairCounts c = counts("a", RouteLabel::JpUs, "20200101", 8);
  c.ja_sentences = 10;
  c.ja_aligned = 8;
  c.en_sentences = 10;
  c.en_aligned = 10;
  const auto r = extraction_rate({c});
  EXPECT_DOUBLE_EQ(r.all.ja_rate(), 0.8);
  EXPECT_DOUBLE_EQ(r.all.en_rate(), 1.0);
  EXPECT_DOUBLE_EQ(r.all.combined_rate(), 0.9);
  EXPECT_DOUBLE_EQ(r.routes[1].ja_rate(), 0.0);
  EXPECT_DOUBLE_EQ(extraction_rate({}).all.combined_rate(), 0.0);
}

TEST(CountPair, AlignedSentences) {
  const auto c = count_pair(PairRow{}, std::vector<SentenceRecord>(5), std::vector<SentenceRecord>(4),
                            {link({1, 2}, {1}), link({4}, {3, 4})});
  EXPECT_EQ(c.ja_aligned, 3u);
  EXPECT_EQ(c.en_aligned, 3u);
  EXPECT_EQ(c.links, 2u);
}

// Two pairs: claims-heavy G06F pair from 2020 and an H04L pair from 2021.
void write_small_corpus(const CorpusLayout& layout) {
  write_format_version(layout);
  io::write_file(layout.pairs_tsv(),
                 family::pairs_to_tsv({{"JPA-USA", RouteLabel::Pct, "WO", "JP2019000001",
                                        Date::parse("20200101"), Date::parse("20200101")},
                                       {"JPB-USB", RouteLabel::JpUs, "JP", "1", Date::parse("20210101"),
                                        Date::parse("20210101")}}));
  io::write_file(layout.ipc_tsv(), "JPA-USA\tG06F 16/00\nJPB-USB\tH04L\n");
  for (const std::string id : {"JPA-USA", "JPB-USB"}) {
    std::vector<SentenceRecord> ja, en;
    for (int i = 1; i <= 5; ++i) {
      const Part part = i <= 3 ? Part::Description : Part::Claim;
      ja.push_back(record(id, part, i, 1, i, "ja" + std::to_string(i)));
      en.push_back(record(id, part, i, 1, i, "en" + std::to_string(i)));
    }
    write_pair_text(layout, id, ja, en);
    write_alignment(layout, id,
                    {link({1}, {1}), link({2}, {2}), link({3}, {3}), link({4}, {4}), link({5}, {5})});
  }
}

TEST(ExtractSubcorpus, Filters) {
  testing::TempDir dir("extract");
  const CorpusLayout layout(dir.path());
  write_small_corpus(layout);
  auto run = [&](SubcorpusFilter f) {
    std::ostringstream out;
    const auto n = extract_subcorpus(layout, f, out);
    const auto s = out.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), long(n));
    return std::make_pair(n, s);
  };
  EXPECT_EQ(run({}).first, 10u);
  SubcorpusFilter claims;
  claims.part = Part::Claim;
  EXPECT_EQ(run(claims).first, 4u);
  claims.route = RouteLabel::Pct;
  EXPECT_EQ(run(claims).second, "ja4\ten4\nja5\ten5\n");
  SubcorpusFilter ipc;
  ipc.ipc_prefix = "G06F";
  EXPECT_EQ(run(ipc).first, 5u);
  SubcorpusFilter years;
  years.year_range = std::make_pair(2021, 2022);
  EXPECT_EQ(run(years).first, 5u);
}

TEST(ExtractSubcorpus, JoinsMergedLinks) {
  testing::TempDir dir("extract2");
  const CorpusLayout layout(dir.path());
  write_small_corpus(layout);
  write_alignment(layout, "JPA-USA", {link({1, 2}, {1}), link({3}, {2, 3})});
  SubcorpusFilter f;
  f.route = RouteLabel::Pct;
  std::ostringstream out;
  extract_subcorpus(layout, f, out);
  EXPECT_EQ(out.str(), "ja1 ja2\ten1\nja3\ten2 en3\n");
}

TEST(ScanCorpus, CountsFromFiles) {
  testing::TempDir dir("scan");
  const CorpusLayout layout(dir.path());
  write_small_corpus(layout);
  const auto pairs = scan_corpus(layout);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].ja_sentences, 5u);
  EXPECT_EQ(pairs[0].links, 5u);
  EXPECT_EQ(io::read_file(layout.format_version()), std::string(kFormatVersion) + "\n");
}

TEST(RoundTrip, RandomRecordsAndLinks) {
  std::mt19937_64 rng(8);
  const std::vector<std::string> pieces{"発明", "は", "widget", "。", " ", "3.5", "(a)", "–", "\"q\""};
  for (int trial = 0; trial < 100; ++trial) {
    const std::string id = "JP" + std::to_string(rng() % 100000) + "-US" + std::to_string(rng() % 100000);
    std::vector<SentenceRecord> recs;
    int n = 0;
    for (int i = int(rng() % 12); i > 0; --i) {
      std::string text;
      for (int w = 1 + int(rng() % 6); w > 0; --w) text += pieces[rng() % pieces.size()];
      text = std::string(text::trim(text));
      if (text.empty()) text = "x";
      ++n;
      recs.push_back(record(id, segment::kPartOrder[rng() % 4], 1 + int(rng() % 50), 1 + int(rng() % 9), n,
                            text));
    }
    EXPECT_EQ(parse_text(format_text(recs)), recs);

    std::vector<AlignmentLink> links;
    int i = 0, j = 0;
    while (links.size() < 10) {
      i += 1 + int(rng() % 2);
      j += 1 + int(rng() % 2);
      const int k = 1 + int(rng() % 3), l = 1 + int(rng() % 3);
      AlignmentLink a;
      for (int x = 0; x < k; ++x) a.ja_sents.push_back(i + x);
      for (int x = 0; x < l; ++x) a.en_sents.push_back(j + x);
      a.score = double(rng() % 10001) / 10000.0;
      i += k - 1;
      j += l - 1;
      links.push_back(a);
    }
    EXPECT_EQ(parse_alignment(format_alignment(links)), links);
  }
}

}  // namespace
}  // namespace patbitext::corpusio
