#include "patbitext/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>

#include "patbitext/corpusio.hpp"
#include "patbitext/error.hpp"
#include "patbitext/ingest.hpp"
#include "patbitext/io.hpp"
#include "patbitext/segment.hpp"
#include "patbitext/text.hpp"

namespace patbitext::fixtures {

using family::RouteLabel;

std::string_view drop_sides_name(DropSides sides) {
  switch (sides) {
    case DropSides::Both: return "both";
    case DropSides::Ja: return "ja";
    case DropSides::En: return "en";
  }
  return "?";
}

int FixtureSpec::total_pairs() const {
  int n = 0;
  for (const auto& [route, count] : n_pairs) n += count;
  return n;
}

void FixtureSpec::validate() const {
  for (auto [p, name] : {std::pair{noise.drop_prob, "drop_prob"}, std::pair{noise.merge_prob, "merge_prob"},
                         std::pair{noise.swap_prob, "swap_prob"}}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidSpec(std::string(name) + " must be in [0, 1]");
  }
  for (const auto& [route, count] : n_pairs) {
    if (count < 0) throw InvalidSpec("negative pair count for " + std::string(family::route_name(route)));
  }
  if (decoys < 0) throw InvalidSpec("decoys must be >= 0");
  if (sentences_min < 1 || sentences_max < sentences_min) throw InvalidSpec("bad sentence range");
  if (words_min < 2 || words_max < words_min) throw InvalidSpec("bad word range");
  if (vocabulary < 50 || vocabulary > 100000) throw InvalidSpec("vocabulary must be in 50..100000");
  if (first_year < 1980 || last_year > 2099 || last_year < first_year) throw InvalidSpec("bad year range");
}

FixtureSpec FixtureSpec::from_config(const ConfigFile& config, FixtureSpec base) {
  if (auto v = config.get_int("seed")) base.seed = static_cast<std::uint64_t>(*v);
  for (auto route : family::kAllRoutes) {
    if (auto v = config.get_int("pairs." + std::string(family::route_name(route)))) {
      base.n_pairs[route] = static_cast<int>(*v);
    }
  }
  auto get_int = [&config](const std::string& key, int& slot) {
    if (auto v = config.get_int(key)) slot = static_cast<int>(*v);
  };
  get_int("pairs.decoys", base.decoys);
  get_int("text.sentences_min", base.sentences_min);
  get_int("text.sentences_max", base.sentences_max);
  get_int("text.words_min", base.words_min);
  get_int("text.words_max", base.words_max);
  get_int("text.vocabulary", base.vocabulary);
  get_int("dates.first_year", base.first_year);
  get_int("dates.last_year", base.last_year);
  if (auto v = config.get_double("noise.drop_prob")) base.noise.drop_prob = *v;
  if (auto v = config.get_double("noise.merge_prob")) base.noise.merge_prob = *v;
  if (auto v = config.get_double("noise.swap_prob")) base.noise.swap_prob = *v;
  if (auto v = config.get("noise.drop_sides")) {
    if (*v == "both") {
      base.noise.drop_sides = DropSides::Both;
    } else if (*v == "ja") {
      base.noise.drop_sides = DropSides::Ja;
    } else if (*v == "en") {
      base.noise.drop_sides = DropSides::En;
    } else {
      throw InvalidSpec("drop_sides must be both, ja or en");
    }
  }
  base.validate();
  return base;
}

FixtureSpec FixtureSpec::from_config(const ConfigFile& config) { return from_config(config, FixtureSpec{}); }

std::string FixtureSpec::to_config() const {
  auto count = [this](RouteLabel r) {
    auto it = n_pairs.find(r);
    return it == n_pairs.end() ? 0 : it->second;
  };
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "seed = %llu\n\n[pairs]\njp-us = %d\njp-x-us = %d\nus-jp = %d\npct = %d\ndecoys = %d\n\n"
                "[text]\nsentences_min = %d\nsentences_max = %d\nwords_min = %d\nwords_max = %d\n"
                "vocabulary = %d\n\n[dates]\nfirst_year = %d\nlast_year = %d\n\n"
                "[noise]\ndrop_prob = %.17g\nmerge_prob = %.17g\nswap_prob = %.17g\ndrop_sides = %s\n",
                static_cast<unsigned long long>(seed), count(RouteLabel::JpUs), count(RouteLabel::JpXUs),
                count(RouteLabel::UsJp), count(RouteLabel::Pct), decoys, sentences_min, sentences_max,
                words_min, words_max, vocabulary, first_year, last_year, noise.drop_prob,
                noise.merge_prob, noise.swap_prob, std::string(drop_sides_name(noise.drop_sides)).c_str());
  return buf;
}

namespace {

// mt19937_64 is fully specified by the standard; the distributions are not, so
// sampling is done by hand to keep fixtures identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct Vocabulary {
  std::vector<std::string> ja;
  std::vector<std::string> en;
};

Vocabulary make_vocabulary(int size, Rng& rng) {
  static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  const auto& prefixes = segment::NonbreakingPrefixes::defaults();
  Vocabulary v;
  std::set<std::string> seen_en;
  std::set<std::string> seen_ja;
  while (static_cast<int>(v.en.size()) < size) {
    std::string word;
    const int syllables = rng.between(2, 3);
    for (int s = 0; s < syllables; ++s) {
      word += kConsonants[rng.below(kConsonants.size())];
      word += kVowels[rng.below(kVowels.size())];
    }
    if (rng.chance(0.3)) word += kConsonants[rng.below(kConsonants.size())];
    std::string capitalized = word;
    capitalized[0] = static_cast<char>(capitalized[0] - 'a' + 'A');
    if (prefixes.contains(word) || prefixes.contains(capitalized) || !seen_en.insert(word).second) continue;
    v.en.push_back(word);
  }
  while (static_cast<int>(v.ja.size()) < size) {
    std::string word;
    for (int c = 0; c < 2; ++c) text::append_utf8(word, static_cast<char32_t>(0x4E00 + rng.below(600)));
    if (!seen_ja.insert(word).second) continue;
    v.ja.push_back(word);
  }
  return v;
}

// A sentence on one side: the bilingual units it renders, in order.
struct Sentence {
  std::vector<int> units;
};
using Paragraph = std::vector<Sentence>;

struct SideText {
  Sentence title;
  std::array<std::vector<Paragraph>, 3> parts;  // abstract, description, claims
};

struct PairText {
  std::vector<std::vector<int>> units;  // unit -> word ids; unit 0 is the title
  SideText ja;
  SideText en;
};

std::string render_ja(const Sentence& s, const PairText& t, const Vocabulary& v, bool title) {
  std::string out;
  for (std::size_t u = 0; u < s.units.size(); ++u) {
    if (u > 0) out += "、";
    for (int w : t.units[static_cast<std::size_t>(s.units[u])]) out += v.ja[static_cast<std::size_t>(w)];
  }
  if (!title) out += "。";
  return out;
}

std::string render_en(const Sentence& s, const PairText& t, const Vocabulary& v, bool title) {
  std::string out;
  for (std::size_t u = 0; u < s.units.size(); ++u) {
    if (u > 0) out += ", ";
    const auto& words = t.units[static_cast<std::size_t>(s.units[u])];
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (w > 0) out += ' ';
      out += v.en[static_cast<std::size_t>(words[w])];
    }
  }
  if (!out.empty()) out[0] = static_cast<char>(text::to_upper_ascii(out.substr(0, 1))[0]);
  if (!title) out += '.';
  return out;
}

PairText make_text(const FixtureSpec& spec, const Vocabulary& vocab, Rng& rng, bool short_text) {
  PairText t;
  auto new_unit = [&](int words_min, int words_max) {
    std::vector<int> words(static_cast<std::size_t>(rng.between(words_min, words_max)));
    for (auto& w : words) w = static_cast<int>(rng.below(vocab.en.size()));
    t.units.push_back(std::move(words));
    return static_cast<int>(t.units.size() - 1);
  };
  const int title = new_unit(3, 6);
  t.ja.title.units = {title};
  t.en.title.units = {title};

  for (std::size_t part = 0; part < 3; ++part) {
    const int n = short_text ? 2 : rng.between(spec.sentences_min, spec.sentences_max);
    const int para_max = part == 2 ? 2 : 4;
    std::vector<std::vector<int>> paragraphs;
    for (int s = 0; s < n;) {
      const int len = std::min(n - s, rng.between(1, para_max));
      std::vector<int> para;
      for (int k = 0; k < len; ++k) para.push_back(new_unit(spec.words_min, spec.words_max));
      paragraphs.push_back(std::move(para));
      s += len;
    }
    if (short_text && part > 0) paragraphs.clear();

    for (const auto& para : paragraphs) {
      // Noise acts within a paragraph: merge adjacent units on one side, drop
      // sentences per side, then swap adjacent sentences on one side.
      Paragraph ja;
      Paragraph en;
      for (std::size_t k = 0; k < para.size(); ++k) {
        if (k + 1 < para.size() && rng.chance(spec.noise.merge_prob)) {
          const bool ja_side = rng.chance(0.5);
          (ja_side ? ja : en).push_back({{para[k], para[k + 1]}});
          (ja_side ? en : ja).push_back({{para[k]}});
          (ja_side ? en : ja).push_back({{para[k + 1]}});
          ++k;
        } else {
          ja.push_back({{para[k]}});
          en.push_back({{para[k]}});
        }
      }
      auto drop = [&](Paragraph& side) {
        Paragraph kept;
        for (auto& s : side) {
          if (!rng.chance(spec.noise.drop_prob)) kept.push_back(std::move(s));
        }
        side = std::move(kept);
      };
      const auto sides = spec.noise.drop_sides;
      if (sides != DropSides::En) drop(ja);
      if (sides != DropSides::Ja) drop(en);
      if (spec.noise.swap_prob > 0.0) {
        const bool ja_side = rng.chance(0.5);
        auto& side = ja_side ? ja : en;
        for (std::size_t k = 0; k + 1 < side.size(); ++k) {
          if (rng.chance(spec.noise.swap_prob)) {
            std::swap(side[k], side[k + 1]);
            ++k;
          }
        }
      }
      if (!ja.empty()) t.ja.parts[part].push_back(std::move(ja));
      if (!en.empty()) t.en.parts[part].push_back(std::move(en));
    }
  }
  return t;
}

DocumentParts render_parts(const SideText& side, const PairText& t, const Vocabulary& v, bool japanese) {
  DocumentParts parts;
  parts.title = japanese ? render_ja(side.title, t, v, true) : render_en(side.title, t, v, true);
  std::array<std::vector<std::string>*, 3> slots{&parts.abstract, &parts.description, &parts.claims};
  for (std::size_t p = 0; p < 3; ++p) {
    for (const auto& para : side.parts[p]) {
      std::vector<std::string> sentences;
      for (const auto& s : para) {
        sentences.push_back(japanese ? render_ja(s, t, v, false) : render_en(s, t, v, false));
      }
      slots[p]->push_back(text::join(sentences, japanese ? "" : " "));
    }
  }
  return parts;
}

// Sentences of one side in document order, as the segmenter will number them.
std::vector<const Sentence*> flatten(const SideText& side) {
  std::vector<const Sentence*> out{&side.title};
  for (const auto& part : side.parts) {
    for (const auto& para : part) {
      for (const auto& s : para) out.push_back(&s);
    }
  }
  return out;
}

// Links between sentences sharing units (connected components), then a
// monotone filter that keeps the earlier Japanese sentence's link when a swap
// makes links cross.
std::vector<align::AlignmentLink> gold_links(const PairText& t) {
  const auto ja = flatten(t.ja);
  const auto en = flatten(t.en);
  const std::size_t n = ja.size() + en.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<int, std::size_t> unit_owner;
  for (std::size_t i = 0; i < ja.size(); ++i) {
    for (int u : ja[i]->units) unit_owner[u] = i;
  }
  for (std::size_t j = 0; j < en.size(); ++j) {
    for (int u : en[j]->units) {
      auto it = unit_owner.find(u);
      if (it != unit_owner.end()) parent[find(ja.size() + j)] = find(it->second);
    }
  }
  std::map<std::size_t, align::AlignmentLink> components;
  for (std::size_t i = 0; i < ja.size(); ++i) components[find(i)].ja_sents.push_back(static_cast<int>(i + 1));
  for (std::size_t j = 0; j < en.size(); ++j) {
    components[find(ja.size() + j)].en_sents.push_back(static_cast<int>(j + 1));
  }
  std::vector<align::AlignmentLink> links;
  for (auto& [root, link] : components) {
    if (link.ja_sents.empty() || link.en_sents.empty()) continue;
    link.score = 1.0;
    links.push_back(std::move(link));
  }
  std::sort(links.begin(), links.end(),
            [](const auto& a, const auto& b) { return a.ja_sents.front() < b.ja_sents.front(); });
  std::vector<align::AlignmentLink> kept;
  for (auto& link : links) {
    if (!kept.empty() && link.en_sents.front() <= kept.back().en_sents.back()) continue;
    kept.push_back(std::move(link));
  }
  return kept;
}

// Checks that the segmenter reproduces the intended sentences and returns their
// ids.
std::vector<std::string> checked_ids(const std::string& pair_id, const PatentDocument& doc,
                                     const std::vector<std::string>& expected, bool japanese) {
  const auto records =
      japanese ? segment::assign_ids(pair_id, segment::split_parts(doc),
                                     [](std::string_view p) { return segment::split_sentences_ja(p); })
               : segment::assign_ids(pair_id, segment::split_parts(doc),
                                     [](std::string_view p) { return segment::split_sentences_en(p); });
  if (records.size() != expected.size()) {
    throw InvariantViolation("fixture " + pair_id + ": segmenter found " + std::to_string(records.size()) +
                             " sentences, expected " + std::to_string(expected.size()));
  }
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].text != expected[i]) {
      throw InvariantViolation("fixture " + pair_id + ": sentence " + std::to_string(i + 1) +
                               " segmented differently");
    }
    ids.push_back(records[i].sentence_id);
  }
  return ids;
}

std::string serial(int year, int n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d%0*d", year, width, n);
  return buf;
}

Date shift_months(Date d, int months) {
  int m = d.year * 12 + (d.month - 1) + months;
  return Date{m / 12, m % 12 + 1, d.day};
}

const std::vector<std::string> kIpcPool = {
    "G06F 16/00", "G06F 3/01",  "H04L 9/32",  "H04W 72/04", "B60K 6/20", "A61K 31/00",
    "C08L 23/00", "H01M 10/05", "G01N 21/00", "F16H 57/02", "H04N 19/00", "G06N 3/08",
};

class Builder {
 public:
  Builder(const FixtureSpec& spec, Fixture& out) : spec_(spec), out_(out), rng_(spec.seed) {}

  void run() {
    vocab_ = make_vocabulary(spec_.vocabulary, rng_);
    for (std::size_t i = 0; i < vocab_.ja.size(); ++i) {
      out_.lexicon_tsv += vocab_.ja[i] + "\t" + vocab_.en[i] + "\n";
    }
    out_.lexicon_tsv += "。\t.\n、\t,\n";

    std::vector<RouteLabel> plan;
    for (auto route : family::kAllRoutes) {
      auto it = spec_.n_pairs.find(route);
      for (int k = 0; it != spec_.n_pairs.end() && k < it->second; ++k) plan.push_back(route);
    }
    for (auto route : plan) make_pair(route);
    for (int d = 0; d < spec_.decoys; ++d) make_decoy(d);

    std::sort(out_.gold_pairs.begin(), out_.gold_pairs.end(),
              [](const auto& a, const auto& b) { return a.pair_id < b.pair_id; });
    std::sort(translations_.begin(), translations_.end());
    for (const auto& [id, sentence] : translations_) out_.translations_tsv += id + "\t" + sentence + "\n";
    rng_.shuffle(out_.jpo);
    rng_.shuffle(out_.uspto);
    rng_.shuffle(out_.docdb);
  }

 private:
  struct Dates {
    Date jp_app;
    Date jp_pub;
    Date us_app;
    Date us_pub;
  };

  Dates draw_dates() {
    Dates d;
    d.jp_pub = Date{rng_.between(spec_.first_year, spec_.last_year), rng_.between(1, 12), rng_.between(1, 28)};
    d.jp_app = shift_months(d.jp_pub, -18);
    d.us_app = shift_months(d.jp_app, 11);
    d.us_pub = shift_months(d.jp_pub, -1);
    return d;
  }

  std::vector<std::string> draw_ipc() {
    std::vector<std::string> codes;
    const int n = rng_.between(0, 3);
    for (int k = 0; k < n; ++k) {
      const auto& c = kIpcPool[rng_.below(kIpcPool.size())];
      if (std::find(codes.begin(), codes.end(), c) == codes.end()) codes.push_back(c);
    }
    return codes;
  }

  PatentDocument jp_doc(GazetteKind kind, const Dates& d) {
    PatentDocument doc;
    doc.office = Office::Jpo;
    doc.gazette_kind = kind;
    const int base = kind == GazetteKind::PublishedApplication ? 100000
                     : kind == GazetteKind::PctTranslation     ? 500000
                                                               : 700000;
    const int n = base + ++jp_counter_;
    doc.publication = {"JP", std::to_string(d.jp_pub.year) + "-" + serial(0, n, 6).substr(4), 'A', d.jp_pub};
    if (kind != GazetteKind::PublishedApplication) doc.publication.kind = gazette_letter(kind);
    doc.application = {"JP", std::to_string(d.jp_app.year) + "-" + serial(0, jp_counter_, 6).substr(4),
                       std::nullopt, d.jp_app};
    doc.ipc_codes = draw_ipc();
    return doc;
  }

  PatentDocument us_doc(const Dates& d) {
    PatentDocument doc;
    doc.office = Office::Uspto;
    const int n = 100000 + ++us_counter_;
    doc.publication = {"US", serial(d.us_pub.year, n, 7), 'A', d.us_pub};
    doc.application = {"US", "16/" + std::to_string(n).substr(0, 3) + "," + std::to_string(n).substr(3),
                       std::nullopt, d.us_app};
    doc.ipc_codes = draw_ipc();
    return doc;
  }

  // DOCDB application-reference number in the docdb format of `id`.
  static std::string docdb_number(const DocumentIdentifier& id) { return text::alnum_upper(id.doc_number); }

  PriorityRecord docdb_subject(const PatentDocument& doc) {
    PriorityRecord r;
    r.subject = {doc.publication.country, docdb_number(doc.publication), doc.publication.kind, doc.publication.date};
    r.application = DocumentIdentifier{doc.application.country, docdb_number(doc.application), 'A', doc.application.date};
    r.application_kind = 'A';
    return r;
  }

  DocumentIdentifier claim_of(const PatentDocument& doc) {
    return {doc.application.country, docdb_number(doc.application), 'A', doc.application.date};
  }

  struct PctNumbers {
    DocumentIdentifier jp_filing;
    DocumentIdentifier us_filing;
    DocumentIdentifier publication;
    PriorityRecord docdb;
    family::PctKey key;
  };

  PctNumbers pct_numbers(const Dates& d) {
    PctNumbers p;
    const int n = ++pct_counter_;
    const int year = d.jp_app.year;
    p.key = {"JP", year, n};
    char buf[64];
    std::snprintf(buf, sizeof buf, "WO%04dJP%06d", year, n);
    p.jp_filing = {"WO", buf, std::nullopt, d.jp_app};
    std::snprintf(buf, sizeof buf, "PCT/JP%04d/%06d", year, n);
    p.us_filing = {"WO", buf, std::nullopt, d.jp_app};
    std::snprintf(buf, sizeof buf, "WO%04d%06d", year + 1, 100000 + n);
    p.publication = {"WO", buf, 'A', shift_months(d.jp_app, 18)};
    p.docdb.subject = {"WO", std::string(buf).substr(2), 'A', p.publication.date};
    p.docdb.application = DocumentIdentifier{"WO", p.key.to_string(), 'W', d.jp_app};
    p.docdb.application_kind = 'W';
    return p;
  }

  void add_pair(RouteLabel route, PatentDocument jp, PatentDocument us, const DocumentIdentifier& anchor) {
    const std::string pair_id = family::make_pair_id(jp, us);
    const PairText t = make_text(spec_, vocab_, rng_, false);
    jp.parts = render_parts(t.ja, t, vocab_, true);
    us.parts = render_parts(t.en, t, vocab_, false);

    std::vector<std::string> ja_text;
    std::vector<std::string> translations;
    for (const auto* s : flatten(t.ja)) {
      const bool title = s == &t.ja.title;
      ja_text.push_back(render_ja(*s, t, vocab_, title));
      translations.push_back(render_en(*s, t, vocab_, title));
    }
    std::vector<std::string> en_text;
    for (const auto* s : flatten(t.en)) en_text.push_back(render_en(*s, t, vocab_, s == &t.en.title));
    const auto ja_ids = checked_ids(pair_id, jp, ja_text, true);
    checked_ids(pair_id, us, en_text, false);
    for (std::size_t i = 0; i < ja_ids.size(); ++i) translations_.emplace_back(ja_ids[i], translations[i]);

    out_.gold_links[pair_id] = gold_links(t);
    out_.gold_pairs.push_back({pair_id, route, anchor.country, anchor.doc_number, jp.publication.date,
                               us.publication.date});
    if (route == RouteLabel::JpUs) jp_us_.push_back(out_.jpo.size());
    out_.jpo.push_back(std::move(jp));
    out_.uspto.push_back(std::move(us));
  }

  void make_pair(RouteLabel route) {
    const Dates d = draw_dates();
    switch (route) {
      case RouteLabel::JpUs: {
        auto jp = jp_doc(GazetteKind::PublishedApplication, d);
        auto us = us_doc(d);
        auto rec = docdb_subject(us);
        const auto claim = claim_of(jp);
        rec.claims.push_back(claim);
        out_.docdb.push_back(std::move(rec));
        add_pair(route, std::move(jp), std::move(us), claim);
        break;
      }
      case RouteLabel::UsJp: {
        auto jp = jp_doc(GazetteKind::PublishedApplication, d);
        auto us = us_doc(d);
        auto rec = docdb_subject(jp);
        const auto claim = claim_of(us);
        rec.claims.push_back(claim);
        out_.docdb.push_back(std::move(rec));
        add_pair(route, std::move(jp), std::move(us), claim);
        break;
      }
      case RouteLabel::JpXUs: {
        auto jp = jp_doc(GazetteKind::PublishedApplication, d);
        auto us = us_doc(d);
        static const char* kOffices[] = {"EP", "DE", "CN", "KR", "GB"};
        const std::string office = kOffices[rng_.below(5)];
        const DocumentIdentifier foreign{office, serial(d.jp_app.year, 100000 + ++foreign_counter_, 6), 'A',
                                         shift_months(d.jp_app, -2)};
        auto jp_rec = docdb_subject(jp);
        jp_rec.claims.push_back(foreign);
        auto us_rec = docdb_subject(us);
        us_rec.claims.push_back(foreign);
        out_.docdb.push_back(std::move(jp_rec));
        out_.docdb.push_back(std::move(us_rec));
        add_pair(route, std::move(jp), std::move(us), foreign);
        break;
      }
      case RouteLabel::Pct: {
        const auto kind = rng_.chance(0.5) ? GazetteKind::PctTranslation : GazetteKind::PctDomesticRepublication;
        auto jp = jp_doc(kind, d);
        auto us = us_doc(d);
        auto p = pct_numbers(d);
        jp.pct_filing = p.jp_filing;
        jp.pct_publication = p.publication;
        us.pct_filing = p.us_filing;
        us.pct_publication = p.publication;
        out_.docdb.push_back(p.docdb);
        add_pair(route, std::move(jp), std::move(us), {"WO", p.key.to_string(), 'W', std::nullopt});
        break;
      }
    }
  }

  void short_parts(PatentDocument& jp, PatentDocument& us) {
    const PairText t = make_text(spec_, vocab_, rng_, true);
    jp.parts = render_parts(t.ja, t, vocab_, true);
    us.parts = render_parts(t.en, t, vocab_, false);
  }

  // Records that look pairable but must not produce a pair.
  void make_decoy(int index) {
    const Dates d = draw_dates();
    int type = index % 5;
    if (type == 4 && jp_us_.empty()) type = 0;
    switch (type) {
      case 0: {  // PCT key missing from DOCDB
        auto jp = jp_doc(GazetteKind::PctTranslation, d);
        auto us = us_doc(d);
        auto p = pct_numbers(d);
        jp.pct_filing = p.jp_filing;
        jp.pct_publication = p.publication;
        us.pct_filing = p.us_filing;
        short_parts(jp, us);
        out_.jpo.push_back(std::move(jp));
        out_.uspto.push_back(std::move(us));
        break;
      }
      case 1: {  // US filing number is not a PCT number
        auto jp = jp_doc(GazetteKind::PctTranslation, d);
        auto us = us_doc(d);
        auto p = pct_numbers(d);
        jp.pct_filing = p.jp_filing;
        jp.pct_publication = p.publication;
        us.pct_filing = DocumentIdentifier{"WO", p.key.to_string(), std::nullopt, d.jp_app};
        out_.docdb.push_back(p.docdb);
        short_parts(jp, us);
        out_.jpo.push_back(std::move(jp));
        out_.uspto.push_back(std::move(us));
        break;
      }
      case 2: {  // priority claim with a utility-model kind
        auto jp = jp_doc(GazetteKind::PublishedApplication, d);
        auto us = us_doc(d);
        auto rec = docdb_subject(us);
        auto claim = claim_of(jp);
        claim.kind = 'U';
        rec.claims.push_back(claim);
        out_.docdb.push_back(std::move(rec));
        short_parts(jp, us);
        out_.jpo.push_back(std::move(jp));
        out_.uspto.push_back(std::move(us));
        break;
      }
      case 3: {  // kind T document whose application is claimed under Paris
        auto jp = jp_doc(GazetteKind::PctTranslation, d);
        auto us = us_doc(d);
        auto p = pct_numbers(d);
        jp.pct_filing = p.jp_filing;
        jp.pct_publication = p.publication;
        auto rec = docdb_subject(us);
        rec.claims.push_back(claim_of(jp));
        out_.docdb.push_back(std::move(rec));
        short_parts(jp, us);
        out_.jpo.push_back(std::move(jp));
        out_.uspto.push_back(std::move(us));
        break;
      }
      default: {  // later US publication claiming an already paired JP application
        const auto& jp = out_.jpo[jp_us_[static_cast<std::size_t>(index / 5) % jp_us_.size()]];
        Dates later = d;
        later.us_app = shift_months(*jp.publication.date, 2);
        later.us_pub = shift_months(*jp.publication.date, 3);
        auto us = us_doc(later);
        auto rec = docdb_subject(us);
        rec.claims.push_back(claim_of(jp));
        out_.docdb.push_back(std::move(rec));
        PatentDocument scratch = jp;
        short_parts(scratch, us);
        out_.uspto.push_back(std::move(us));
        break;
      }
    }
  }

  const FixtureSpec& spec_;
  Fixture& out_;
  Rng rng_;
  Vocabulary vocab_;
  std::vector<std::pair<std::string, std::string>> translations_;
  std::vector<std::size_t> jp_us_;  // indices into out_.jpo
  int jp_counter_ = 0;
  int us_counter_ = 0;
  int pct_counter_ = 0;
  int foreign_counter_ = 0;
};

}  // namespace

Fixture build_fixture(const FixtureSpec& spec) {
  spec.validate();
  Fixture out;
  Builder(spec, out).run();
  return out;
}

void write_fixture(const Fixture& fixture, const FixtureSpec& spec, const fs::path& out) {
  constexpr std::size_t kPerFile = 100;
  auto chunks = [&](const auto& records, const std::string& dir, auto serialize) {
    for (std::size_t start = 0, file = 1; start < records.size(); start += kPerFile, ++file) {
      std::string content;
      for (std::size_t i = start; i < std::min(records.size(), start + kPerFile); ++i) {
        content += serialize(records[i]);
      }
      char name[64];
      std::snprintf(name, sizeof name, "%s-%04zu.xml", dir.c_str(), file);
      io::write_file(out / dir / name, content);
    }
    fs::create_directories(out / dir);
  };
  chunks(fixture.jpo, "jpo", [](const PatentDocument& d) { return ingest::to_jpo_xml(d); });
  chunks(fixture.uspto, "uspto", [](const PatentDocument& d) { return ingest::to_uspto_xml(d); });
  chunks(fixture.docdb, "docdb", [](const PriorityRecord& r) { return ingest::to_docdb_xml(r); });
  io::write_file(out / "lexicon.tsv", fixture.lexicon_tsv);
  io::write_file(out / "translations.tsv", fixture.translations_tsv);
  io::write_file(out / "fixture.toml", spec.to_config());

  const corpusio::CorpusLayout gold(out / "gold");
  io::write_file(gold.pairs_tsv(), family::pairs_to_tsv(fixture.gold_pairs));
  corpusio::write_format_version(gold);
  for (const auto& [pair_id, links] : fixture.gold_links) {
    corpusio::write_alignment(gold, pair_id, links, true);
  }
}

Fixture generate(const FixtureSpec& spec, const fs::path& out) {
  auto fixture = build_fixture(spec);
  write_fixture(fixture, spec, out);
  return fixture;
}

}  // namespace patbitext::fixtures
