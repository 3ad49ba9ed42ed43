#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "patbitext/lexicon.hpp"
#include "patbitext/patent.hpp"

namespace patbitext::segment {

enum class Part { Title, Abstract, Description, Claim };

inline constexpr Part kPartOrder[] = {Part::Title, Part::Abstract, Part::Description, Part::Claim};

std::string_view part_name(Part part);
std::optional<Part> part_from_name(std::string_view name);

struct PartParagraphs {
  std::vector<std::string> title;  // zero or one paragraph
  std::vector<std::string> abstract;
  std::vector<std::string> description;
  std::vector<std::string> claims;

  const std::vector<std::string>& operator[](Part part) const;
  std::vector<std::string>& operator[](Part part);
};

PartParagraphs split_parts(const PatentDocument& doc);

// Prefixes (without their period) after which a period does not end a
// sentence. File format: one prefix per line, '#' comments.
class NonbreakingPrefixes {
 public:
  static NonbreakingPrefixes parse(std::string_view content);
  static NonbreakingPrefixes load(const std::filesystem::path& path);
  // The list shipped in data/nonbreaking_prefixes.en.
  static const NonbreakingPrefixes& defaults();

  bool contains(std::string_view prefix) const { return prefixes_.count(std::string(prefix)) != 0; }
  std::size_t size() const { return prefixes_.size(); }

 private:
  std::set<std::string> prefixes_;
};

std::vector<std::string> split_sentences_en(
    std::string_view paragraph, const NonbreakingPrefixes& prefixes = NonbreakingPrefixes::defaults());
std::vector<std::string> split_sentences_ja(std::string_view paragraph);

struct SentenceRecord {
  std::string sentence_id;
  std::string pair_id;
  Part part = Part::Title;
  int paragraph_no = 0;
  int sent_in_para = 0;
  int sent_in_doc = 0;
  std::string text;
  std::vector<std::string> tokens;  // filled by the aligner on demand

  bool operator==(const SentenceRecord&) const = default;
};

// "<pair_id>:<part>:p<4 digits>:s<2 digits>:n<5 digits>"; wider numbers are
// written in full.
std::string make_sentence_id(std::string_view pair_id, Part part, int paragraph_no,
                             int sent_in_para, int sent_in_doc);

struct SentenceIdFields {
  std::string pair_id;
  Part part = Part::Title;
  int paragraph_no = 0;
  int sent_in_para = 0;
  int sent_in_doc = 0;

  bool operator==(const SentenceIdFields&) const = default;
};
std::optional<SentenceIdFields> parse_sentence_id(std::string_view id);

using SentenceSplitter = std::function<std::vector<std::string>(std::string_view)>;
using Tokenizer = std::function<std::vector<std::string>(std::string_view)>;

// Numbers sentences across parts in the order title, abstract, description,
// claim. Tokens are left empty.
std::vector<SentenceRecord> assign_ids(std::string_view pair_id, const PartParagraphs& parts,
                                       const SentenceSplitter& splitter);

// Lower-cases, splits on whitespace and detaches leading/trailing
// punctuation (. , ; : ( ) " ' ? ! [ ]) as separate tokens. Inner characters
// such as hyphens and decimal points stay inside the word.
std::vector<std::string> tokenize_en(std::string_view sentence);

// Greedy longest match against lexicon keys, left to right. Unmatched text
// becomes single-character tokens, except runs of ASCII letters/digits which
// stay together. Whitespace (ASCII and U+3000) separates tokens.
std::vector<std::string> tokenize_ja(std::string_view sentence,
                                     const align::BilingualLexicon& lexicon);

}  // namespace patbitext::segment
