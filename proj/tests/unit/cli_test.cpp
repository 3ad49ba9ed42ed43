#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "patbitext/cli.hpp"
#include "patbitext/io.hpp"
#include "oracle.hpp"

namespace patbitext::cli {
namespace {

using testing::TempDir;

class CliPipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    fixtures::FixtureSpec spec;
    spec.seed = 31;
    spec.decoys = 6;
    spec.sentences_min = 4;
    spec.sentences_max = 8;
    for (auto& [route, n] : spec.n_pairs) n = 2;
    fixtures::generate(spec, fx_.path());
  }

  PipelineConfig config(const fs::path& out, align::Method mode) const {
    PipelineConfig c;
    c.jpo = fx_ / "jpo";
    c.uspto = fx_ / "uspto";
    c.docdb = fx_ / "docdb";
    c.out = out;
    c.mode = mode;
    c.lexicon = fx_ / "lexicon.tsv";
    c.translations = fx_ / "translations.tsv";
    c.log_level = LogLevel::Off;
    return c;
  }

  TempDir fx_{"cli-fx"};
  std::ostringstream sink_;
  Logger log_{sink_, LogLevel::Off};
};

TEST_F(CliPipeline, DictRecoversGold) {
  TempDir out("cli-dict");
  std::ostringstream report;
  cmd_run(config(out.path(), align::Method::Dict), log_, report);
  EXPECT_EQ(io::read_file(out / "pairs.tsv"), io::read_file(fx_ / "gold" / "pairs.tsv"));
  const auto s = testing::score_corpus(fx_ / "gold", out.path());
  EXPECT_GT(s.gold, 0u);
  EXPECT_EQ(s.correct, s.gold);
  EXPECT_EQ(s.predicted, s.gold);
  EXPECT_NE(report.str().find("sum"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "stats" / "yearly.tsv"));
}

TEST_F(CliPipeline, MtRecoversGold) {
  TempDir out("cli-mt");
  std::ostringstream report;
  cmd_run(config(out.path(), align::Method::Mt), log_, report);
  const auto s = testing::score_corpus(fx_ / "gold", out.path());
  EXPECT_EQ(s.correct, s.gold);
  EXPECT_EQ(s.predicted, s.gold);
}

TEST_F(CliPipeline, StagesAreRestartable) {
  TempDir out("cli-restart");
  std::ostringstream report;
  const auto c = config(out.path(), align::Method::Dict);
  cmd_run(c, log_, report);
  const auto before = testing::tree_digest(out.path());
  cmd_docalign(c, log_);
  cmd_segment(c, log_);
  cmd_align(c, log_);
  EXPECT_EQ(testing::tree_digest(out.path()), before);
}

TEST_F(CliPipeline, ThreadCountDoesNotChangeOutput) {
  TempDir one("cli-t1"), many("cli-t4");
  std::ostringstream report;
  auto c1 = config(one.path(), align::Method::Mt);
  auto c4 = config(many.path(), align::Method::Mt);
  c4.threads = 4;
  cmd_run(c1, log_, report);
  cmd_run(c4, log_, report);
  EXPECT_EQ(testing::tree_digest(one.path()), testing::tree_digest(many.path()));
}

TEST_F(CliPipeline, PaperCompatAndMinScore) {
  TempDir out("cli-compat");
  std::ostringstream report;
  auto c = config(out.path(), align::Method::Dict);
  c.paper_compat = true;
  c.min_score = 1.01;
  cmd_run(c, log_, report);
  for (const auto& row : family::parse_pairs_tsv(io::read_file(out / "pairs.tsv"))) {
    EXPECT_EQ(io::read_file(corpusio::CorpusLayout(out.path()).alignment(row.pair_id)), "");
  }
}

TEST_F(CliPipeline, MissingDocdbNamesPath) {
  TempDir out("cli-missing");
  auto c = config(out.path(), align::Method::Dict);
  c.docdb = fx_ / "no-such-docdb";
  std::ostringstream report;
  try {
    cmd_run(c, log_, report);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), c.docdb.string());
    EXPECT_NE(error_json(e).find("no-such-docdb"), std::string::npos);
  }
}

TEST_F(CliPipeline, ExtractClaims) {
  TempDir out("cli-extract");
  std::ostringstream report;
  cmd_run(config(out.path(), align::Method::Dict), log_, report);
  corpusio::SubcorpusFilter f;
  f.part = segment::Part::Claim;
  std::ostringstream lines;
  const auto r = cmd_extract(config(out.path(), align::Method::Dict), f, lines, log_);
  EXPECT_GT(r.counts.at("lines"), 0);
}

int run_binary(const std::string& args, std::string* err) {
  TempDir dir("cli-bin");
  const auto err_path = dir / "stderr";
  const std::string cmd = std::string(PATBITEXT_CLI_PATH) + " " + args + " >/dev/null 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  if (err != nullptr) *err = io::read_file(err_path);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliBinary, MissingDocdbExitsTwo) {
  TempDir fx("cli-bin-fx");
  fixtures::FixtureSpec spec;
  spec.sentences_min = spec.sentences_max = 2;
  fixtures::generate(spec, fx.path());
  TempDir out("cli-bin-out");
  std::string err;
  const int code = run_binary("run --jpo " + (fx / "jpo").string() + " --uspto " + (fx / "uspto").string() +
                                  " --docdb " + (fx / "missing").string() + " --out " + out.path().string() +
                                  " --lexicon " + (fx / "lexicon.tsv").string() + " --log-level off",
                              &err);
  EXPECT_EQ(code, 2);
  EXPECT_NE(err.find("\"error\""), std::string::npos);
  EXPECT_NE(err.find((fx / "missing").string()), std::string::npos);
}

TEST(CliBinary, UsageErrorsExitTwo) {
  EXPECT_EQ(run_binary("align --mode nonsense", nullptr), 2);
  EXPECT_EQ(run_binary("no-such-command", nullptr), 2);
}

TEST(CliBinary, FixtureThenRunSucceeds) {
  TempDir fx("cli-bin-fx2"), out("cli-bin-out2");
  ASSERT_EQ(run_binary("fixture --out " + fx.path().string() + " --seed 3 --pairs 1", nullptr), 0);
  const std::string inputs = " --jpo " + (fx / "jpo").string() + " --uspto " + (fx / "uspto").string() +
                             " --docdb " + (fx / "docdb").string() + " --out " + out.path().string();
  EXPECT_EQ(run_binary("run" + inputs + " --mode mt --translations " + (fx / "translations.tsv").string() +
                           " --log-level off",
                       nullptr),
            0);
  EXPECT_EQ(io::read_file(out / "pairs.tsv"), io::read_file(fx / "gold" / "pairs.tsv"));
}

TEST(ErrorJson, Shape) {
  EXPECT_EQ(error_json("Usage", "bad \"flag\""), "{\"error\":\"Usage\",\"message\":\"bad \\\"flag\\\"\"}");
}

}  // namespace
}  // namespace patbitext::cli
