#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patbitext/bleu.hpp"
#include "patbitext/config.hpp"
#include "patbitext/lexicon.hpp"

namespace patbitext::align {

enum class Method { Dict, Mt };

std::string_view method_name(Method method);
std::optional<Method> method_from_name(std::string_view name);

// A k-to-l block of aligned sentences. Sentence numbers are 1-based.
struct AlignmentLink {
  std::vector<int> ja_sents;
  std::vector<int> en_sents;
  double score = 0.0;
  Method method = Method::Dict;

  bool operator==(const AlignmentLink&) const = default;
};

inline constexpr std::size_t kMaxBeadSide = 3;

// Throws InvariantViolation unless every link has 1..3 ascending numbers per
// side and the links are disjoint and strictly monotone in list order. When
// n_ja / n_en are given, numbers must also lie within 1..n.
void validate_links(const std::vector<AlignmentLink>& links,
                    std::optional<int> n_ja = std::nullopt,
                    std::optional<int> n_en = std::nullopt);

class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(int rows, int cols) : rows_(rows), cols_(cols), cells_(std::size_t(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int i, int j) const { return cells_[std::size_t(i) * cols_ + j]; }
  // Throws InvariantViolation for values outside [0, 1] or non-finite.
  void set(int i, int j, double value);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> cells_;
};

struct Bead {
  int ja = 1;
  int en = 1;

  bool operator==(const Bead&) const = default;
  bool is_skip() const { return ja == 0 || en == 0; }
};

std::vector<Bead> default_beads();
// "1-1,1-2,2-1" -> beads. Throws InvalidSpec on malformed input or sides
// above 3.
std::vector<Bead> parse_beads(std::string_view spec);
std::string beads_to_string(const std::vector<Bead>& beads);

struct AlignParams {
  std::vector<Bead> beads = default_beads();
  double skip_penalty = 0.05;   // lambda
  double merge_penalty = 0.01;  // mu
  double anchor_threshold = 0.0;
  int max_gap_merge = 2;
  int bleu_order = 2;

  // Throws InvalidSpec.
  void validate() const;

  // Reads keys beads, skip_penalty, merge_penalty, anchor_threshold,
  // max_gap_merge and bleu_order, either bare or under an [align] section.
  static AlignParams from_config(const ConfigFile& config, AlignParams base);
  static AlignParams from_config(const ConfigFile& config);
};

// Greedy one-to-one Dice score: 2m / (|ja| + |en|).
double dict_similarity(const std::vector<std::string>& ja_tokens,
                       const std::vector<std::string>& en_tokens,
                       const BilingualLexicon& lexicon);

// Similarity of the bead covering ja sentences [ja_begin, ja_begin + k) and en
// sentences [en_begin, en_begin + l) (0-based, k, l >= 1). nullopt forbids
// the bead.
using BeadScoreFn = std::function<std::optional<double>(int ja_begin, int k, int en_begin, int l)>;

struct BeadPath {
  std::vector<AlignmentLink> links;  // nonempty beads only, numbered from 1
  double objective = 0.0;
  bool reachable = false;
};

// Maximizes the left-to-right sum of bead values over monotone bead
// sequences covering both sides: a k-l bead is worth sim - mu when k + l > 2
// and sim otherwise; a skip bead is worth -lambda.
BeadPath align_beads(const BeadScoreFn& sim, int n_ja, int n_en, const AlignParams& params,
                     Method method = Method::Dict);

std::vector<AlignmentLink> align_dict(const std::vector<std::vector<std::string>>& ja_sentences,
                                      const std::vector<std::vector<std::string>>& en_sentences,
                                      const BilingualLexicon& lexicon, const AlignParams& params);

// Maximum-total-score strictly monotone chain of cells with score > threshold.
// Returns 0-based (row, col) pairs.
std::vector<std::pair<int, int>> select_anchors(const ScoreMatrix& scores, double threshold);

// Translation-based alignment over an arbitrary merged-block scorer: score(i, k,
// j, l) is the similarity of translations [i, i + k) against English
// [j, j + l). Used by align_mt with merged BLEU.
using MergedScoreFn = std::function<double(int ja_begin, int k, int en_begin, int l)>;
std::vector<AlignmentLink> align_mt_scored(const MergedScoreFn& score, int n_ja, int n_en,
                                           const AlignParams& params);

// ja_translations[i] is the tokenized English translation of Japanese
// sentence i. Throws LengthMismatch if ja_translations.size() != n_ja.
std::vector<AlignmentLink> align_mt(const std::vector<std::vector<std::string>>& ja_translations,
                                    std::size_t n_ja,
                                    const std::vector<std::vector<std::string>>& en_sentences,
                                    const AlignParams& params);

}  // namespace patbitext::align
