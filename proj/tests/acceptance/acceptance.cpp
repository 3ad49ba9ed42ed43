// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "patbitext/align.hpp"
#include "patbitext/bleu.hpp"
#include "patbitext/cli.hpp"
#include "patbitext/corpusio.hpp"
#include "patbitext/family.hpp"
#include "patbitext/fixtures.hpp"
#include "patbitext/io.hpp"
#include "patbitext/segment.hpp"
#include "patbitext/text.hpp"
#include "oracle.hpp"

namespace pb = patbitext;
namespace fs = std::filesystem;
using pb::family::RouteLabel;

namespace {

// Tolerances and floors.
constexpr double kDocalignSeconds = 5.0;
constexpr int kOldestCases = 100;
constexpr int kDpInstances = 500;
constexpr int kDpMaxSide = 6;
constexpr double kDpSeconds = 30.0;
constexpr double kBleuTolerance = 1e-12;
constexpr double kNoisyF1Floor = 0.90;
constexpr double kRateLow = 0.6;
constexpr double kRateHigh = 0.9;
constexpr int kRoundTripRecords = 1000;
constexpr double kSentencesPerSecondFloor = 2000.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

pb::Logger& quiet_log() {
  static std::ostringstream sink;
  static pb::Logger log(sink, pb::LogLevel::Off);
  return log;
}

pb::cli::PipelineConfig pipeline(const fs::path& fixture, const fs::path& out, pb::align::Method mode,
                                 unsigned threads = 1) {
  pb::cli::PipelineConfig c;
  c.jpo = fixture / "jpo";
  c.uspto = fixture / "uspto";
  c.docdb = fixture / "docdb";
  c.out = out;
  c.mode = mode;
  c.lexicon = fixture / "lexicon.tsv";
  c.translations = fixture / "translations.tsv";
  c.threads = threads;
  c.log_level = pb::LogLevel::Off;
  return c;
}

void run_pipeline(const pb::cli::PipelineConfig& c) {
  std::ostringstream report;
  pb::cli::cmd_run(c, quiet_log(), report);
}

pb::fixtures::FixtureSpec spec_with(std::uint64_t seed, int per_route, int decoys) {
  pb::fixtures::FixtureSpec spec;
  spec.seed = seed;
  for (auto& [route, n] : spec.n_pairs) n = per_route;
  spec.decoys = decoys;
  return spec;
}

// Marginal identities of the yearly table over a finished corpus.
bool yearly_marginals_hold(const fs::path& corpus) {
  const auto pairs = pb::corpusio::scan_corpus(pb::corpusio::CorpusLayout(corpus));
  const auto stats = pb::corpusio::yearly_stats(pairs);
  std::size_t docs = 0;
  for (std::size_t r = 0; r < 4; ++r) {
    std::size_t s = 0, d = 0;
    for (const auto& y : stats.years) {
      s += y.sentences[r];
      d += y.documents[r];
    }
    if (s != stats.sum.sentences[r] || d != stats.sum.documents[r]) return false;
    docs += d;
  }
  std::size_t links = 0;
  for (const auto& p : pairs) links += p.links;
  return docs == pairs.size() && stats.sum.document_total() == pairs.size() &&
         stats.sum.sentence_total() == links;
}

Outcome route_classification() {
  pb::testing::TempDir fx("acc1-fx"), out("acc1-out");
  pb::fixtures::generate(spec_with(101, 50, 20), fx.path());
  const auto start = Clock::now();
  auto c = pipeline(fx.path(), out.path(), pb::align::Method::Dict);
  pb::cli::cmd_parse(c, quiet_log());
  pb::cli::cmd_docalign(c, quiet_log());
  const double secs = seconds_since(start);

  auto key = [](const pb::family::PairRow& r) { return pb::family::pairs_to_tsv({r}); };
  std::set<std::string> gold, got;
  for (const auto& r : pb::family::parse_pairs_tsv(pb::io::read_file(fx / "gold" / "pairs.tsv"))) gold.insert(key(r));
  for (const auto& r : pb::family::parse_pairs_tsv(pb::io::read_file(out / "pairs.tsv"))) got.insert(key(r));
  std::size_t fp = 0, fn = 0;
  for (const auto& g : got) fp += gold.count(g) == 0;
  for (const auto& g : gold) fn += got.count(g) == 0;
  return {gold.size() == 200 && fp == 0 && fn == 0 && secs < kDocalignSeconds,
          "gold=" + std::to_string(gold.size()) + " fp=" + std::to_string(fp) + " fn=" + std::to_string(fn) +
              " time=" + fmt("%.2fs", secs) + " (limit " + fmt("%.0fs", kDocalignSeconds) + ")"};
}

Outcome oldest_pair_rule() {
  std::mt19937_64 rng(202);
  auto pick = [&](int lo, int hi) { return lo + int(rng() % std::uint64_t(hi - lo + 1)); };
  // Small date pool so equal dates, and therefore the later tie-breaks, occur.
  auto date = [&] { return pb::Date{2010 + pick(0, 1), pick(1, 2), pick(1, 2)}; };
  int agree = 0;
  for (int c = 0; c < kOldestCases; ++c) {
    auto jp = std::make_shared<pb::PatentDocument>();
    jp->office = pb::Office::Jpo;
    jp->gazette_kind = pb::GazetteKind::PublishedApplication;
    jp->publication = {"JP", "2012-10" + std::to_string(1000 + c), 'A', date()};
    jp->application = {"JP", "2010-0" + std::to_string(1000 + c), std::nullopt, date()};
    const pb::DocumentIdentifier claimed{"JP", jp->application.doc_number, 'A', std::nullopt};

    std::vector<pb::family::DocumentRef> us;
    std::vector<pb::PriorityRecord> records;
    std::vector<pb::family::DocumentPair> candidates;
    const int n = pick(2, 6);
    for (int k = 0; k < n; ++k) {
      auto d = std::make_shared<pb::PatentDocument>();
      d->office = pb::Office::Uspto;
      d->publication = {"US", "2012" + std::to_string(1000000 + pick(0, 999999)), 'A', date()};
      d->application = {"US", "12/" + std::to_string(100000 + k), std::nullopt, date()};
      us.push_back(d);
      records.push_back({d->publication, {claimed}, std::nullopt, std::nullopt});
      candidates.push_back({pb::family::make_pair_id(*jp, *d), jp, d, RouteLabel::JpUs, claimed});
    }
    const std::vector<pb::family::DocumentRef> jps{jp};
    const auto pairs = pb::family::pair_paris(jps, us, pb::family::build_priority_index(records));
    const auto& want = *std::min_element(candidates.begin(), candidates.end(), pb::oracle::oldest_less);
    const auto& chosen = pb::family::select_oldest_pair(candidates);
    if (pairs.size() == 1 && pairs[0].pair_id == want.pair_id && chosen.pair_id == want.pair_id) ++agree;
  }
  return {agree == kOldestCases, std::to_string(agree) + "/" + std::to_string(kOldestCases) + " cases agree"};
}

Outcome dp_versus_oracle() {
  std::mt19937_64 rng(303);
  const auto start = Clock::now();
  int equal = 0, same_links = 0;
  const pb::align::AlignParams params;
  for (int t = 0; t < kDpInstances; ++t) {
    const int n_ja = int(rng() % (kDpMaxSide + 1)), n_en = int(rng() % (kDpMaxSide + 1));
    const int vocab = 3 + int(rng() % 10);
    pb::align::BilingualLexicon lex;
    for (int e = int(rng() % 20); e > 0; --e) {
      lex.add("j" + std::to_string(rng() % vocab), "e" + std::to_string(rng() % vocab));
    }
    std::vector<std::vector<std::string>> ja(n_ja), en(n_en);
    for (auto& s : ja)
      for (int w = 1 + int(rng() % 5); w > 0; --w) s.push_back("j" + std::to_string(rng() % vocab));
    for (auto& s : en)
      for (int w = 1 + int(rng() % 5); w > 0; --w) s.push_back("e" + std::to_string(rng() % vocab));

    auto sim = [&](int i, int k, int j, int l) -> std::optional<double> {
      std::vector<std::string> a, b;
      for (int x = i; x < i + k; ++x) a.insert(a.end(), ja[x].begin(), ja[x].end());
      for (int x = j; x < j + l; ++x) b.insert(b.end(), en[x].begin(), en[x].end());
      return pb::oracle::dict_similarity(a, b, lex);
    };
    const auto bf = pb::oracle::brute_force_align(sim, n_ja, n_en, params.beads,
                                                   {params.skip_penalty, params.merge_penalty});
    const auto dp = pb::align::align_beads(sim, n_ja, n_en, params);
    const auto links = pb::align::align_dict(ja, en, lex, params);
    if (dp.reachable && bf.reachable && dp.objective == bf.objective) ++equal;
    if (links == dp.links) ++same_links;
  }
  const double secs = seconds_since(start);
  return {equal == kDpInstances && same_links == kDpInstances && secs < kDpSeconds,
          std::to_string(equal) + "/" + std::to_string(kDpInstances) + " exact objective ties, " +
              std::to_string(same_links) + "/" + std::to_string(kDpInstances) +
              " align_dict == DP links, time=" + fmt("%.2fs", secs) + " (limit " + fmt("%.0fs", kDpSeconds) + ")"};
}

Outcome bleu_values() {
  const double identity = pb::align::sentence_bleu({"a", "b", "c"}, {"a", "b", "c"});
  const double disjoint = pb::align::sentence_bleu({"a", "b", "c"}, {"x", "y", "z"});
  const double partial = pb::align::sentence_bleu({"a", "b", "c"}, {"a", "b", "d"}, 2);
  const bool ok = std::abs(identity - 1.0) <= kBleuTolerance && std::abs(disjoint) <= kBleuTolerance &&
                  std::abs(partial - 2.0 / 3.0) <= kBleuTolerance;
  char buf[160];
  std::snprintf(buf, sizeof buf, "identity=%.15f disjoint=%.15f abc/abd=%.15f (tol %.0e)", identity, disjoint,
                partial, kBleuTolerance);
  return {ok, buf};
}

struct Corpora {
  pb::testing::TempDir clean_fx{"acc-clean-fx"};
  pb::testing::TempDir clean_dict{"acc-clean-dict"};
  pb::testing::TempDir clean_mt{"acc-clean-mt"};
  pb::testing::TempDir noisy_fx{"acc-noisy-fx"};
  pb::testing::TempDir noisy_mt{"acc-noisy-mt"};
  pb::fixtures::FixtureSpec clean_spec = spec_with(505, 13, 0);
};

std::string prf(const pb::oracle::LinkScores& s) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "P=%.4f R=%.4f F1=%.4f (gold %zu)", s.precision(), s.recall(), s.f1(), s.gold);
  return buf;
}

Outcome clean_recovery(Corpora& c) {
  // 13 + 13 + 13 + 11 = 50 pairs.
  auto spec = c.clean_spec;
  spec.n_pairs[RouteLabel::Pct] = 11;
  c.clean_spec = spec;
  const auto fx = pb::fixtures::generate(spec, c.clean_fx.path());
  run_pipeline(pipeline(c.clean_fx.path(), c.clean_dict.path(), pb::align::Method::Dict));
  run_pipeline(pipeline(c.clean_fx.path(), c.clean_mt.path(), pb::align::Method::Mt));
  const auto dict = pb::testing::score_corpus(c.clean_fx / "gold", c.clean_dict.path());
  const auto mt = pb::testing::score_corpus(c.clean_fx / "gold", c.clean_mt.path());
  std::size_t total_sentences = 0;
  for (const auto& [id, links] : fx.gold_links) {
    for (const auto& l : links) total_sentences += l.ja_sents.size();
  }
  const bool ok = fx.gold_pairs.size() == 50 && dict.gold > 0 && dict.precision() == 1.0 &&
                  dict.recall() == 1.0 && mt.precision() == 1.0 && mt.recall() == 1.0;
  return {ok, std::to_string(fx.gold_pairs.size()) + " pairs, " +
                  fmt("%.1f", double(total_sentences) / double(fx.gold_pairs.size())) +
                  " ja sentences/pair; dict " + prf(dict) + "; mt " + prf(mt)};
}

Outcome noisy_recovery(Corpora& c) {
  auto spec = c.clean_spec;
  spec.seed = 606;
  spec.noise.drop_prob = 0.15;
  pb::fixtures::generate(spec, c.noisy_fx.path());
  run_pipeline(pipeline(c.noisy_fx.path(), c.noisy_mt.path(), pb::align::Method::Mt));
  const auto mt = pb::testing::score_corpus(c.noisy_fx / "gold", c.noisy_mt.path());
  const auto rate = pb::corpusio::extraction_rate(
      pb::corpusio::scan_corpus(pb::corpusio::CorpusLayout(c.noisy_mt.path())));
  const double combined = rate.all.combined_rate();
  const bool ok = mt.f1() >= kNoisyF1Floor && combined >= kRateLow && combined <= kRateHigh;
  char buf[200];
  std::snprintf(buf, sizeof buf, "; extraction ja=%.4f en=%.4f combined=%.4f (band [%.1f, %.1f], F1 floor %.2f)",
                rate.all.ja_rate(), rate.all.en_rate(), combined, kRateLow, kRateHigh, kNoisyF1Floor);
  return {ok, "mt " + prf(mt) + buf};
}

Outcome determinism(Corpora& c) {
  pb::testing::TempDir again("acc-det-again"), eight("acc-det-eight"), mt8("acc-det-mt8");
  run_pipeline(pipeline(c.clean_fx.path(), again.path(), pb::align::Method::Dict));
  run_pipeline(pipeline(c.clean_fx.path(), eight.path(), pb::align::Method::Dict, 8));
  run_pipeline(pipeline(c.noisy_fx.path(), mt8.path(), pb::align::Method::Mt, 8));
  const auto base = pb::testing::tree_digest(c.clean_dict.path());
  const bool rerun = pb::testing::tree_digest(again.path()) == base;
  const bool threads = pb::testing::tree_digest(eight.path()) == base;
  const bool mt_threads = pb::testing::tree_digest(mt8.path()) == pb::testing::tree_digest(c.noisy_mt.path());
  return {rerun && threads && mt_threads && base.size() > 50,
          std::to_string(base.size()) + " files; rerun " + (rerun ? "identical" : "DIFFERS") + ", dict threads 1 vs 8 " +
              (threads ? "identical" : "DIFFERS") + ", mt threads 1 vs 8 " + (mt_threads ? "identical" : "DIFFERS")};
}

Outcome round_trips(Corpora& c) {
  std::mt19937_64 rng(808);
  const std::vector<std::string> pieces{"発明", "は", "装置", "。", "widget", " ", "3.5", "(a)", "、", "\"q\"", "FIG."};
  const auto parts = pb::segment::kPartOrder;
  int text_ok = 0, align_ok = 0;
  for (int t = 0; t < kRoundTripRecords; ++t) {
    const std::string id = "JP" + std::to_string(rng() % 10000000) + "-US" + std::to_string(rng() % 100000000);
    pb::segment::SentenceRecord r;
    r.pair_id = id;
    r.part = parts[rng() % 4];
    r.paragraph_no = 1 + int(rng() % 12000);
    r.sent_in_para = 1 + int(rng() % 150);
    r.sent_in_doc = 1 + int(rng() % 120000);
    r.sentence_id = pb::segment::make_sentence_id(id, r.part, r.paragraph_no, r.sent_in_para, r.sent_in_doc);
    for (int w = 1 + int(rng() % 8); w > 0; --w) r.text += pieces[rng() % pieces.size()];
    r.text = std::string(pb::text::trim(r.text));
    if (r.text.empty()) r.text = "x";
    const std::vector<pb::segment::SentenceRecord> recs{r};
    if (pb::corpusio::parse_text(pb::corpusio::format_text(recs)) == recs) ++text_ok;

    std::vector<pb::align::AlignmentLink> links;
    int i = 0, j = 0;
    for (int n = int(rng() % 6); n > 0; --n) {
      i += 1 + int(rng() % 3);
      j += 1 + int(rng() % 3);
      pb::align::AlignmentLink l;
      const int k = 1 + int(rng() % 3), m = 1 + int(rng() % 3);
      for (int x = 0; x < k; ++x) l.ja_sents.push_back(i + x);
      for (int x = 0; x < m; ++x) l.en_sents.push_back(j + x);
      l.score = double(rng() % 10001) / 10000.0;
      i += k - 1;
      j += m - 1;
      links.push_back(l);
    }
    if (pb::corpusio::parse_alignment(pb::corpusio::format_alignment(links)) == links) ++align_ok;
  }
  const bool marginals = yearly_marginals_hold(c.clean_dict.path()) && yearly_marginals_hold(c.clean_mt.path()) &&
                         yearly_marginals_hold(c.noisy_mt.path());
  return {text_ok == kRoundTripRecords && align_ok == kRoundTripRecords && marginals,
          "text " + std::to_string(text_ok) + "/" + std::to_string(kRoundTripRecords) + ", alignment " +
              std::to_string(align_ok) + "/" + std::to_string(kRoundTripRecords) + ", yearly marginals " +
              (marginals ? "hold" : "VIOLATED") + " on 3 corpora"};
}

Outcome throughput(Corpora&) {
  const auto fx = pb::fixtures::build_fixture(spec_with(909, 25, 0));
  const auto lexicon = pb::corpusio::parse_lexicon(fx.lexicon_tsv);
  std::map<std::string, const pb::PatentDocument*> jp, us;
  for (const auto& d : fx.jpo) jp[pb::text::alnum_upper(d.publication.doc_number)] = &d;
  for (const auto& d : fx.uspto) us[pb::text::alnum_upper(d.publication.doc_number)] = &d;
  const pb::align::AlignParams params;
  const auto& prefixes = pb::segment::NonbreakingPrefixes::defaults();
  std::size_t sentences = 0, links = 0;
  const auto start = Clock::now();
  for (const auto& row : fx.gold_pairs) {
    const auto ids = pb::family::split_pair_id(row.pair_id);
    const auto* j = jp.at(ids->first);
    const auto* u = us.at(ids->second);
    const auto ja = pb::segment::assign_ids(row.pair_id, pb::segment::split_parts(*j),
                                            [](std::string_view p) { return pb::segment::split_sentences_ja(p); });
    const auto en = pb::segment::assign_ids(
        row.pair_id, pb::segment::split_parts(*u),
        [&prefixes](std::string_view p) { return pb::segment::split_sentences_en(p, prefixes); });
    links += pb::cli::align_pair(ja, en, pb::align::Method::Dict, params, &lexicon, nullptr).size();
    sentences += ja.size() + en.size();
  }
  const double secs = seconds_since(start);
  const double rate = double(sentences) / secs;
  return {rate >= kSentencesPerSecondFloor && links > 0,
          std::to_string(sentences) + " sentences in " + fmt("%.3fs", secs) + " = " + fmt("%.0f", rate) +
              " sentences/s on one thread (floor " + fmt("%.0f", kSentencesPerSecondFloor) + ")"};
}

}  // namespace

int main() {
  Corpora corpora;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "route classification", route_classification},
      {2, "oldest-pair rule", oldest_pair_rule},
      {3, "DP vs brute-force oracle", dp_versus_oracle},
      {4, "BLEU unit values", bleu_values},
      {5, "gold recovery, clean", [&] { return clean_recovery(corpora); }},
      {6, "gold recovery, noisy", [&] { return noisy_recovery(corpora); }},
      {7, "determinism", [&] { return determinism(corpora); }},
      {8, "format round trips", [&] { return round_trips(corpora); }},
      {9, "throughput floor", [&] { return throughput(corpora); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  criterion %d  %-26s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
