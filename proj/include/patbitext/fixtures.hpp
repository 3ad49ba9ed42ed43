#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "patbitext/align.hpp"
#include "patbitext/config.hpp"
#include "patbitext/family.hpp"
#include "patbitext/patent.hpp"

namespace patbitext::fixtures {

namespace fs = std::filesystem;

enum class DropSides { Both, Ja, En };

std::string_view drop_sides_name(DropSides sides);

struct NoiseSpec {
  double drop_prob = 0.0;
  double merge_prob = 0.0;
  double swap_prob = 0.0;
  DropSides drop_sides = DropSides::Both;
};

struct FixtureSpec {
  std::uint64_t seed = 1;
  std::map<family::RouteLabel, int> n_pairs{{family::RouteLabel::JpUs, 1},
                                            {family::RouteLabel::JpXUs, 1},
                                            {family::RouteLabel::UsJp, 1},
                                            {family::RouteLabel::Pct, 1}};
  int decoys = 0;
  // Sentences in each of the abstract, description and claims.
  int sentences_min = 8;
  int sentences_max = 16;
  int words_min = 6;
  int words_max = 14;
  int vocabulary = 1500;
  int first_year = 2015;
  int last_year = 2021;
  NoiseSpec noise;

  int total_pairs() const;
  // Throws InvalidSpec.
  void validate() const;

  // Keys: seed; [pairs] jp-us, jp-x-us, us-jp, pct, decoys; [text]
  // sentences_min, sentences_max, words_min, words_max, vocabulary; [dates]
  // first_year, last_year; [noise] drop_prob, merge_prob, swap_prob,
  // drop_sides (both|ja|en).
  static FixtureSpec from_config(const ConfigFile& config, FixtureSpec base);
  static FixtureSpec from_config(const ConfigFile& config);
  std::string to_config() const;
};

struct Fixture {
  std::vector<PatentDocument> jpo;
  std::vector<PatentDocument> uspto;
  std::vector<PriorityRecord> docdb;
  std::string lexicon_tsv;
  std::string translations_tsv;  // keyed by the sentence ids the pipeline assigns
  std::vector<family::PairRow> gold_pairs;
  std::map<std::string, std::vector<align::AlignmentLink>> gold_links;  // by pair_id
};

// Deterministic in the spec.
Fixture build_fixture(const FixtureSpec& spec);

// Layout under `out`:
//   jpo/*.xml uspto/*.xml docdb/*.xml   records, 100 per file
//   lexicon.tsv translations.tsv fixture.toml
//   gold/pairs.tsv gold/FORMAT_VERSION gold/docs/**/<pair_id>.align
void write_fixture(const Fixture& fixture, const FixtureSpec& spec, const fs::path& out);

Fixture generate(const FixtureSpec& spec, const fs::path& out);

}  // namespace patbitext::fixtures
