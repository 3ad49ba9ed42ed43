#include "patbitext/segment.hpp"

#include <array>
#include <cstdio>
#include <charconv>
#include <utility>

#include "patbitext/io.hpp"
#include "patbitext/text.hpp"

namespace patbitext::segment {

namespace {

constexpr std::string_view kDefaultPrefixes =
#include "patbitext/default_prefixes.inc"
    ;

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0x3000;
}

bool is_digit_cp(char32_t cp) { return (cp >= U'0' && cp <= U'9') || (cp >= 0xFF10 && cp <= 0xFF19); }

}  // namespace

std::string_view part_name(Part part) {
  switch (part) {
    case Part::Title: return "title";
    case Part::Abstract: return "abstract";
    case Part::Description: return "description";
    case Part::Claim: return "claim";
  }
  return "?";
}

std::optional<Part> part_from_name(std::string_view name) {
  for (auto p : kPartOrder) {
    if (part_name(p) == name) return p;
  }
  return std::nullopt;
}

const std::vector<std::string>& PartParagraphs::operator[](Part part) const {
  switch (part) {
    case Part::Title: return title;
    case Part::Abstract: return abstract;
    case Part::Description: return description;
    case Part::Claim: return claims;
  }
  return title;
}

std::vector<std::string>& PartParagraphs::operator[](Part part) {
  return const_cast<std::vector<std::string>&>(std::as_const(*this)[part]);
}

PartParagraphs split_parts(const PatentDocument& doc) {
  PartParagraphs out;
  if (auto title = text::collapse_whitespace(doc.parts.title); !title.empty()) {
    out.title.push_back(std::move(title));
  }
  out.abstract = doc.parts.abstract;
  out.description = doc.parts.description;
  out.claims = doc.parts.claims;
  return out;
}

NonbreakingPrefixes NonbreakingPrefixes::parse(std::string_view content) {
  NonbreakingPrefixes out;
  for (auto line : io::split_lines(content)) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (!line.empty()) out.prefixes_.emplace(line);
  }
  return out;
}

NonbreakingPrefixes NonbreakingPrefixes::load(const std::filesystem::path& path) {
  return parse(io::read_file(path));
}

const NonbreakingPrefixes& NonbreakingPrefixes::defaults() {
  static const NonbreakingPrefixes kDefaults = parse(kDefaultPrefixes);
  return kDefaults;
}

namespace {

// Closing quotes/brackets that may follow sentence-final punctuation.
bool is_closer(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U')' || cp == U']' || cp == U'}' || cp == 0x201D ||
         cp == 0x2019 || cp == 0xBB;
}

bool is_opener(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U'(' || cp == U'[' || cp == U'{' || cp == 0x201C ||
         cp == 0x2018 || cp == 0xAB;
}

std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) out.push_back(text::next_code_point(s, pos));
  return out;
}

bool next_word_starts_sentence(std::string_view word) {
  const auto cps = decode(word);
  std::size_t i = 0;
  while (i < cps.size() && is_opener(cps[i])) ++i;
  if (i >= cps.size()) return false;
  const char32_t c = cps[i];
  return (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9');
}

// True when `word` ends a sentence by punctuation, ignoring trailing closers.
// `prefix` receives the text before a final run of periods (openers stripped).
bool ends_with_terminator(std::string_view word, bool& period, std::string& prefix) {
  auto cps = decode(word);
  while (!cps.empty() && is_closer(cps.back())) cps.pop_back();
  if (cps.empty()) return false;
  const char32_t last = cps.back();
  if (last != U'.' && last != U'?' && last != U'!') return false;
  period = last == U'.';
  if (period) {
    while (!cps.empty() && cps.back() == U'.') cps.pop_back();
    std::size_t b = 0;
    while (b < cps.size() && is_opener(cps[b])) ++b;
    prefix.clear();
    for (std::size_t i = b; i < cps.size(); ++i) text::append_utf8(prefix, cps[i]);
  }
  return true;
}

}  // namespace

std::vector<std::string> split_sentences_en(std::string_view paragraph,
                                            const NonbreakingPrefixes& prefixes) {
  struct Span {
    std::size_t begin;
    std::size_t end;
  };
  std::vector<Span> words;
  std::size_t i = 0;
  while (i < paragraph.size()) {
    while (i < paragraph.size() && text::is_ascii_space(paragraph[i])) ++i;
    const std::size_t b = i;
    while (i < paragraph.size() && !text::is_ascii_space(paragraph[i])) ++i;
    if (i > b) words.push_back({b, i});
  }
  std::vector<std::string> out;
  if (words.empty()) return out;

  std::size_t sentence_begin = words.front().begin;
  std::string prefix;
  for (std::size_t w = 0; w + 1 < words.size(); ++w) {
    const auto word = paragraph.substr(words[w].begin, words[w].end - words[w].begin);
    const auto next = paragraph.substr(words[w + 1].begin, words[w + 1].end - words[w + 1].begin);
    bool period = false;
    if (!ends_with_terminator(word, period, prefix)) continue;
    if (!next_word_starts_sentence(next)) continue;
    if (period && !prefix.empty() && prefixes.contains(prefix)) continue;
    out.emplace_back(paragraph.substr(sentence_begin, words[w].end - sentence_begin));
    sentence_begin = words[w + 1].begin;
  }
  out.emplace_back(paragraph.substr(sentence_begin, words.back().end - sentence_begin));
  return out;
}

namespace {

bool is_ja_terminator(char32_t cp) {
  return cp == 0x3002 || cp == 0xFF01 || cp == 0xFF1F || cp == U'!' || cp == U'?' || cp == 0xFF0E;
}

bool is_ja_closer(char32_t cp) {
  return cp == 0x300D || cp == 0x300F || cp == 0xFF09 || cp == U')' || cp == 0x3011 ||
         cp == 0x3015 || cp == 0x201D;
}

}  // namespace

std::vector<std::string> split_sentences_ja(std::string_view paragraph) {
  // Byte offsets of each code point plus a sentinel.
  std::vector<std::size_t> offsets;
  std::vector<char32_t> cps;
  for (std::size_t pos = 0; pos < paragraph.size();) {
    offsets.push_back(pos);
    cps.push_back(text::next_code_point(paragraph, pos));
  }
  offsets.push_back(paragraph.size());

  std::vector<std::string> out;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && is_space_cp(cps[b])) ++b;
    while (e > b && is_space_cp(cps[e - 1])) --e;
    if (e > b) out.emplace_back(paragraph.substr(offsets[b], offsets[e] - offsets[b]));
  };

  std::size_t begin = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_ja_terminator(cps[i])) {
      ++i;
      continue;
    }
    // A full-width period between digits is a decimal point.
    if (cps[i] == 0xFF0E && i + 1 < cps.size() && is_digit_cp(cps[i + 1])) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < cps.size() && is_ja_terminator(cps[end])) ++end;
    while (end < cps.size() && is_ja_closer(cps[end])) ++end;
    emit(begin, end);
    begin = end;
    i = end;
  }
  emit(begin, cps.size());
  return out;
}

std::string make_sentence_id(std::string_view pair_id, Part part, int paragraph_no,
                             int sent_in_para, int sent_in_doc) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ":p%04d:s%02d:n%05d", paragraph_no, sent_in_para, sent_in_doc);
  std::string out(pair_id);
  out += ':';
  out += part_name(part);
  out += buf;
  return out;
}

std::optional<SentenceIdFields> parse_sentence_id(std::string_view id) {
  std::array<std::string_view, 4> tail{};
  std::string_view rest = id;
  for (int k = 3; k >= 0; --k) {
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) return std::nullopt;
    tail[static_cast<std::size_t>(k)] = rest.substr(colon + 1);
    rest = rest.substr(0, colon);
  }
  SentenceIdFields out;
  out.pair_id = std::string(rest);
  if (out.pair_id.empty()) return std::nullopt;
  const auto part = part_from_name(tail[0]);
  if (!part) return std::nullopt;
  out.part = *part;
  auto number = [](std::string_view field, char tag, int& value) {
    if (field.size() < 2 || field.front() != tag) return false;
    const auto digits = field.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    return ec == std::errc() && ptr == digits.data() + digits.size() && value >= 1;
  };
  if (!number(tail[1], 'p', out.paragraph_no) || !number(tail[2], 's', out.sent_in_para) ||
      !number(tail[3], 'n', out.sent_in_doc)) {
    return std::nullopt;
  }
  return out;
}

std::vector<SentenceRecord> assign_ids(std::string_view pair_id, const PartParagraphs& parts,
                                       const SentenceSplitter& splitter) {
  std::vector<SentenceRecord> out;
  int in_doc = 0;
  for (auto part : kPartOrder) {
    const auto& paragraphs = parts[part];
    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
      int in_para = 0;
      for (auto& sentence : splitter(paragraphs[p])) {
        SentenceRecord r;
        r.pair_id = std::string(pair_id);
        r.part = part;
        r.paragraph_no = static_cast<int>(p + 1);
        r.sent_in_para = ++in_para;
        r.sent_in_doc = ++in_doc;
        r.sentence_id = make_sentence_id(pair_id, part, r.paragraph_no, r.sent_in_para, r.sent_in_doc);
        r.text = std::move(sentence);
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

namespace {
bool is_detached_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '(': case ')': case '"': case '\'':
    case '?': case '!': case '[': case ']':
      return true;
    default:
      return false;
  }
}
}  // namespace

std::vector<std::string> tokenize_en(std::string_view sentence) {
  std::vector<std::string> out;
  for (const auto& word : text::split_whitespace(text::to_lower_ascii(sentence))) {
    std::size_t b = 0;
    std::size_t e = word.size();
    while (b < e && is_detached_punct(word[b])) out.emplace_back(1, word[b++]);
    std::vector<std::string> trailing;
    while (e > b && is_detached_punct(word[e - 1])) trailing.emplace_back(1, word[--e]);
    if (e > b) out.push_back(word.substr(b, e - b));
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
  }
  return out;
}

std::vector<std::string> tokenize_ja(std::string_view sentence,
                                     const align::BilingualLexicon& lexicon) {
  std::vector<std::size_t> offsets;
  std::vector<char32_t> cps;
  for (std::size_t pos = 0; pos < sentence.size();) {
    offsets.push_back(pos);
    cps.push_back(text::next_code_point(sentence, pos));
  }
  offsets.push_back(sentence.size());

  std::vector<std::string> out;
  const std::size_t max_bytes = lexicon.max_key_bytes();
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_space_cp(cps[i])) {
      ++i;
      continue;
    }
    // Longest lexicon key starting here.
    std::size_t best_end = 0;
    for (std::size_t e = i + 1; e <= cps.size() && offsets[e] - offsets[i] <= max_bytes; ++e) {
      if (lexicon.contains_key(sentence.substr(offsets[i], offsets[e] - offsets[i]))) best_end = e;
    }
    if (best_end > i) {
      out.emplace_back(sentence.substr(offsets[i], offsets[best_end] - offsets[i]));
      i = best_end;
      continue;
    }
    std::size_t e = i + 1;
    if (cps[i] < 0x80 && text::is_ascii_alnum(static_cast<char>(cps[i]))) {
      while (e < cps.size() && cps[e] < 0x80 && text::is_ascii_alnum(static_cast<char>(cps[e]))) ++e;
    }
    out.emplace_back(sentence.substr(offsets[i], offsets[e] - offsets[i]));
    i = e;
  }
  return out;
}

}  // namespace patbitext::segment
