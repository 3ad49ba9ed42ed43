#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "patbitext/cli.hpp"
#include "patbitext/config.hpp"
#include "patbitext/text.hpp"

namespace {

using namespace patbitext;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string jpo, uspto, docdb, out, store, mode, lexicon, translations, prefixes, config;
  std::string log_level = "info";
  unsigned threads = 1;
  double min_score = 0.0;
  bool paper_compat = false;
  bool gzip = false;
  std::optional<std::size_t> max_warnings;

  std::string beads;
  std::optional<double> skip_penalty, merge_penalty, anchor_threshold;
  std::optional<int> max_gap_merge, bleu_order;

  // fixture
  std::optional<std::uint64_t> seed;
  std::optional<int> pairs_per_route, decoys;
  std::optional<double> drop_prob, merge_prob, swap_prob;
  std::string drop_sides;

  // extract
  std::string part, ipc_prefix, years, route, output;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "TOML-style parameter file");
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--log-level", f.log_level, "debug, info, warn, error or off");
  cmd->add_option("--max-warnings", f.max_warnings, "exit 1 when more data warnings occur");
}

void add_inputs(CLI::App* cmd, Flags& f) {
  cmd->add_option("--jpo", f.jpo, "JPO XML file or directory");
  cmd->add_option("--uspto", f.uspto, "USPTO XML file or directory");
  cmd->add_option("--docdb", f.docdb, "DOCDB XML file or directory");
}

void add_corpus(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out,--corpus", f.out, "corpus root");
  cmd->add_option("--store", f.store, "parsed-record store (default <out>/store)");
  cmd->add_flag("--gzip", f.gzip, "gzip per-pair output files");
}

void add_align(CLI::App* cmd, Flags& f) {
  cmd->add_option("--mode", f.mode, "dict or mt");
  cmd->add_option("--lexicon", f.lexicon, "bilingual lexicon TSV (dict mode)");
  cmd->add_option("--translations", f.translations, "sentence translations TSV (mt mode)");
  cmd->add_option("--min-score", f.min_score, "drop links scoring below this");
  cmd->add_flag("--paper-compat", f.paper_compat, "omit the score column");
  cmd->add_option("--beads", f.beads, "bead inventory, e.g. 1-1,1-2,2-1");
  cmd->add_option("--skip-penalty", f.skip_penalty);
  cmd->add_option("--merge-penalty", f.merge_penalty);
  cmd->add_option("--anchor-threshold", f.anchor_threshold);
  cmd->add_option("--max-gap-merge", f.max_gap_merge);
  cmd->add_option("--bleu-order", f.bleu_order);
}

std::optional<std::string> config_string(const ConfigFile& c, const std::string& key) {
  if (auto v = c.get(key)) return v;
  return c.get("pipeline." + key);
}

cli::PipelineConfig make_config(const Flags& f, const CLI::App& cmd) {
  cli::PipelineConfig config;
  ConfigFile file;
  if (!f.config.empty()) file = ConfigFile::load(f.config);
  auto given = [&cmd](const std::string& name) { return cmd.get_option_no_throw(name) != nullptr && cmd.count(name) > 0; };
  auto pick = [&](const std::string& flag, const std::string& value, const std::string& key) -> std::string {
    if (given(flag)) return value;
    if (auto v = config_string(file, key)) return *v;
    return value;
  };

  config.jpo = pick("--jpo", f.jpo, "jpo");
  config.uspto = pick("--uspto", f.uspto, "uspto");
  config.docdb = pick("--docdb", f.docdb, "docdb");
  config.out = pick("--out", f.out, "out");
  if (auto s = pick("--store", f.store, "store"); !s.empty()) config.store = s;
  config.lexicon = pick("--lexicon", f.lexicon, "lexicon");
  config.translations = pick("--translations", f.translations, "translations");
  if (auto p = pick("--prefixes", f.prefixes, "prefixes"); !p.empty()) config.nonbreaking_prefixes = p;

  const auto mode = pick("--mode", f.mode.empty() ? "dict" : f.mode, "mode");
  const auto method = align::method_from_name(mode);
  if (!method) throw UsageError("--mode must be dict or mt, got '" + mode + "'");
  config.mode = *method;

  config.log_level = parse_log_level(pick("--log-level", f.log_level, "log_level"));
  config.threads = f.threads;
  if (!given("--threads")) {
    if (auto v = file.get_int("threads")) config.threads = static_cast<unsigned>(std::max(1LL, *v));
  }
  config.min_score = f.min_score;
  if (!given("--min-score")) {
    if (auto v = file.get_double("min_score")) config.min_score = *v;
  }
  config.paper_compat = f.paper_compat;
  config.gzip = f.gzip;
  config.max_warnings = f.max_warnings;
  if (!config.max_warnings) {
    if (auto v = file.get_int("max_warnings")) config.max_warnings = static_cast<std::size_t>(*v);
  }

  config.params = align::AlignParams::from_config(file);
  if (!f.beads.empty()) config.params.beads = align::parse_beads(f.beads);
  if (f.skip_penalty) config.params.skip_penalty = *f.skip_penalty;
  if (f.merge_penalty) config.params.merge_penalty = *f.merge_penalty;
  if (f.anchor_threshold) config.params.anchor_threshold = *f.anchor_threshold;
  if (f.max_gap_merge) config.params.max_gap_merge = *f.max_gap_merge;
  if (f.bleu_order) config.params.bleu_order = *f.bleu_order;
  config.params.validate();
  return config;
}

fixtures::FixtureSpec make_fixture_spec(const Flags& f) {
  fixtures::FixtureSpec spec;
  if (!f.config.empty()) spec = fixtures::FixtureSpec::from_config(ConfigFile::load(f.config));
  if (f.seed) spec.seed = *f.seed;
  if (f.pairs_per_route) {
    for (auto route : family::kAllRoutes) spec.n_pairs[route] = *f.pairs_per_route;
  }
  if (f.decoys) spec.decoys = *f.decoys;
  if (f.drop_prob) spec.noise.drop_prob = *f.drop_prob;
  if (f.merge_prob) spec.noise.merge_prob = *f.merge_prob;
  if (f.swap_prob) spec.noise.swap_prob = *f.swap_prob;
  if (!f.drop_sides.empty()) {
    ConfigFile c = ConfigFile::parse("[noise]\ndrop_sides = " + f.drop_sides + "\n");
    spec = fixtures::FixtureSpec::from_config(c, spec);
  }
  spec.validate();
  return spec;
}

corpusio::SubcorpusFilter make_filter(const Flags& f) {
  corpusio::SubcorpusFilter filter;
  if (!f.part.empty()) {
    filter.part = segment::part_from_name(f.part);
    if (!filter.part) throw UsageError("--part must be title, abstract, description or claim");
  }
  if (!f.ipc_prefix.empty()) filter.ipc_prefix = f.ipc_prefix;
  if (!f.route.empty()) {
    filter.route = family::route_from_name(f.route);
    if (!filter.route) throw UsageError("--route must be jp-us, jp-x-us, us-jp or pct");
  }
  if (!f.years.empty()) {
    const auto dash = f.years.find('-');
    int from = 0;
    int to = 0;
    const std::string a = f.years.substr(0, dash);
    const std::string b = dash == std::string::npos ? a : f.years.substr(dash + 1);
    auto ok = [](const std::string& s, int& v) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc() && ptr == s.data() + s.size();
    };
    if (!ok(a, from) || !ok(b, to) || from > to) throw UsageError("--years expects YYYY or YYYY-YYYY");
    filter.year_range = std::make_pair(from, to);
  }
  return filter;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Usage:
    case Errc::Io:
    case Errc::InvalidSpec:
      return kExitUsage;
    default:
      return kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patent bitext mining toolkit"};
  app.require_subcommand(1);
  Flags f;

  auto* parse = app.add_subcommand("parse", "parse JPO/USPTO/DOCDB XML into the record store");
  auto* docalign = app.add_subcommand("docalign", "pair JP and US documents, write pairs.tsv and ipc.tsv");
  auto* segment_cmd = app.add_subcommand("segment", "split paired documents into numbered sentences");
  auto* align_cmd = app.add_subcommand("align", "align sentences of every pair");
  auto* stats = app.add_subcommand("stats", "yearly table and extraction rates");
  auto* fixture = app.add_subcommand("fixture", "generate a synthetic corpus with gold files");
  auto* run = app.add_subcommand("run", "parse, docalign, segment, align and stats");
  auto* extract = app.add_subcommand("extract", "write sentence pairs matching a filter");

  for (auto* cmd : {parse, docalign, segment_cmd, align_cmd, stats, fixture, run, extract}) add_common(cmd, f);
  for (auto* cmd : {parse, run}) add_inputs(cmd, f);
  for (auto* cmd : {parse, docalign, segment_cmd, align_cmd, stats, run, extract}) add_corpus(cmd, f);
  for (auto* cmd : {align_cmd, run}) add_align(cmd, f);
  for (auto* cmd : {segment_cmd, run}) cmd->add_option("--prefixes", f.prefixes, "nonbreaking prefix list");

  fixture->add_option("--out", f.out, "output directory")->required();
  fixture->add_option("--seed", f.seed, "random seed");
  fixture->add_option("--pairs", f.pairs_per_route, "pairs per route");
  fixture->add_option("--decoys", f.decoys, "decoy record groups");
  fixture->add_option("--drop-prob", f.drop_prob);
  fixture->add_option("--merge-prob", f.merge_prob);
  fixture->add_option("--swap-prob", f.swap_prob);
  fixture->add_option("--drop-sides", f.drop_sides, "both, ja or en");

  extract->add_option("--part", f.part, "title, abstract, description or claim");
  extract->add_option("--ipc-prefix", f.ipc_prefix);
  extract->add_option("--years", f.years, "YYYY or YYYY-YYYY (JP publication year)");
  extract->add_option("--route", f.route);
  extract->add_option("--output", f.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << cli::error_json("usage", e.what()) << '\n';
    return kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  std::optional<Logger> log;
  try {
    log.emplace(std::cerr, parse_log_level(f.log_level));
    std::vector<cli::StageReport> reports;
    std::optional<std::size_t> max_warnings = f.max_warnings;
    if (cmd == fixture) {
      reports.push_back(cli::cmd_fixture(make_fixture_spec(f), f.out, *log));
    } else {
      const auto config = make_config(f, *cmd);
      log->set_level(config.log_level);
      max_warnings = config.max_warnings;
      if (config.out.empty()) throw UsageError("--out is required");
      if (cmd == parse) {
        reports.push_back(cli::cmd_parse(config, *log));
      } else if (cmd == docalign) {
        reports.push_back(cli::cmd_docalign(config, *log));
      } else if (cmd == segment_cmd) {
        reports.push_back(cli::cmd_segment(config, *log));
      } else if (cmd == align_cmd) {
        reports.push_back(cli::cmd_align(config, *log));
      } else if (cmd == stats) {
        reports.push_back(cli::cmd_stats(config, *log, std::cout));
      } else if (cmd == run) {
        reports = cli::cmd_run(config, *log, std::cout);
      } else if (cmd == extract) {
        const auto filter = make_filter(f);
        if (f.output.empty()) {
          reports.push_back(cli::cmd_extract(config, filter, std::cout, *log));
        } else {
          std::ofstream file(f.output, std::ios::binary);
          if (!file) throw IoError(f.output, "cannot open for writing");
          reports.push_back(cli::cmd_extract(config, filter, file, *log));
        }
      }
    }
    std::size_t warnings = 0;
    for (const auto& r : reports) warnings += r.diag.count();
    if (max_warnings && warnings > *max_warnings) {
      std::cerr << cli::error_json("max_warnings_exceeded", std::to_string(warnings) + " warnings, limit " +
                                                               std::to_string(*max_warnings))
                << '\n';
      return kExitData;
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << cli::error_json(e) << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << cli::error_json("io", e.what()) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << cli::error_json("internal", e.what()) << '\n';
    return kExitData;
  }
}
