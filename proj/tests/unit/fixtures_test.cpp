#include <gtest/gtest.h>

#include "patbitext/corpusio.hpp"
#include "patbitext/fixtures.hpp"
#include "patbitext/ingest.hpp"
#include "patbitext/io.hpp"
#include "oracle.hpp"

namespace patbitext::fixtures {
namespace {

using family::RouteLabel;

FixtureSpec small_spec(std::uint64_t seed) {
  FixtureSpec spec;
  spec.seed = seed;
  spec.decoys = 5;
  spec.sentences_min = 3;
  spec.sentences_max = 6;
  return spec;
}

TEST(FixtureSpec, Validate) {
  FixtureSpec spec;
  EXPECT_NO_THROW(spec.validate());
  spec.noise.drop_prob = 1.5;
  EXPECT_THROW(spec.validate(), InvalidSpec);
  spec.noise.drop_prob = 0.0;
  spec.noise.swap_prob = -0.1;
  EXPECT_THROW(build_fixture(spec), InvalidSpec);
  spec.noise.swap_prob = 0.0;
  spec.sentences_max = 0;
  EXPECT_THROW(spec.validate(), InvalidSpec);
}

TEST(FixtureSpec, ConfigRoundTrip) {
  FixtureSpec spec;
  spec.seed = 77;
  spec.n_pairs[RouteLabel::Pct] = 9;
  spec.decoys = 4;
  spec.noise.drop_prob = 0.15;
  spec.noise.drop_sides = DropSides::En;
  const auto back = FixtureSpec::from_config(ConfigFile::parse(spec.to_config()));
  EXPECT_EQ(back.to_config(), spec.to_config());
  EXPECT_EQ(back.n_pairs.at(RouteLabel::Pct), 9);
  EXPECT_EQ(back.noise.drop_sides, DropSides::En);
  EXPECT_THROW(FixtureSpec::from_config(ConfigFile::parse("[noise]\nmerge_prob = 2\n")), InvalidSpec);
  EXPECT_THROW(FixtureSpec::from_config(ConfigFile::parse("[noise]\ndrop_sides = left\n")), InvalidSpec);
}

TEST(Fixture, SameSeedSameBytes) {
  testing::TempDir a("fx-a"), b("fx-b"), c("fx-c");
  generate(small_spec(12), a.path());
  generate(small_spec(12), b.path());
  generate(small_spec(13), c.path());
  EXPECT_EQ(testing::tree_digest(a.path()), testing::tree_digest(b.path()));
  EXPECT_NE(testing::tree_digest(a.path()), testing::tree_digest(c.path()));
}

TEST(Fixture, CountsAndGoldInvariants) {
  auto spec = small_spec(4);
  spec.n_pairs = {{RouteLabel::JpUs, 2}, {RouteLabel::JpXUs, 3}, {RouteLabel::UsJp, 1}, {RouteLabel::Pct, 4}};
  spec.noise = {0.2, 0.2, 0.2, DropSides::Both};
  const auto fx = build_fixture(spec);
  EXPECT_EQ(fx.gold_pairs.size(), 10u);
  std::map<RouteLabel, int> by_route;
  for (const auto& row : fx.gold_pairs) ++by_route[row.route];
  EXPECT_EQ(by_route, spec.n_pairs);
  ASSERT_EQ(fx.gold_links.size(), 10u);
  for (const auto& [id, links] : fx.gold_links) {
    EXPECT_FALSE(links.empty()) << id;
    EXPECT_NO_THROW(align::validate_links(links)) << id;
  }
}

TEST(Fixture, RecordsParseCleanly) {
  testing::TempDir dir("fx-parse");
  auto spec = small_spec(6);
  spec.noise.merge_prob = 0.3;
  const auto fx = generate(spec, dir.path());
  Diagnostics diag;
  std::size_t jp = 0, us = 0, dd = 0;
  for (const auto& f : io::list_files(dir / "jpo")) jp += ingest::read_jpo_file(f, {}, diag).size();
  for (const auto& f : io::list_files(dir / "uspto")) us += ingest::read_uspto_file(f, {}, diag).size();
  for (const auto& f : io::list_files(dir / "docdb")) dd += ingest::read_docdb_file(f, {}, diag).size();
  EXPECT_EQ(diag.count(), 0u);
  EXPECT_EQ(jp, fx.jpo.size());
  EXPECT_EQ(us, fx.uspto.size());
  EXPECT_EQ(dd, fx.docdb.size());
  EXPECT_TRUE(fs::exists(dir / "fixture.toml"));
  EXPECT_EQ(io::read_file(dir / "gold" / "pairs.tsv"), family::pairs_to_tsv(fx.gold_pairs));
}

TEST(Fixture, DroppingEveryEnglishSentenceLeavesOnlyTitles) {
  auto spec = small_spec(8);
  spec.noise.drop_prob = 1.0;
  spec.noise.drop_sides = DropSides::En;
  const auto fx = build_fixture(spec);
  for (const auto& [id, links] : fx.gold_links) {
    ASSERT_EQ(links.size(), 1u) << id;
    EXPECT_EQ(links[0].ja_sents, std::vector<int>{1});
    EXPECT_EQ(links[0].en_sents, std::vector<int>{1});
  }
}

TEST(Fixture, LexiconAndTranslationsAreConsistent) {
  const auto fx = build_fixture(small_spec(10));
  Diagnostics diag;
  const auto lex = corpusio::parse_lexicon(fx.lexicon_tsv, &diag);
  const auto tr = corpusio::parse_translations(fx.translations_tsv, &diag);
  EXPECT_EQ(diag.count(), 0u);
  EXPECT_GT(lex.entry_count(), 100u);
  EXPECT_FALSE(tr.empty());
  for (const auto& [id, tokens] : tr) EXPECT_TRUE(segment::parse_sentence_id(id)) << id;
}

}  // namespace
}  // namespace patbitext::fixtures
