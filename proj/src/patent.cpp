#include "patbitext/patent.hpp"

#include <chrono>
#include <cstdio>
#include <regex>

#include "patbitext/text.hpp"

namespace patbitext {

std::optional<Date> Date::parse(std::string_view s) {
  if (s.size() != 8) return std::nullopt;
  for (char c : s) {
    if (!text::is_ascii_digit(c)) return std::nullopt;
  }
  auto num = [&](std::size_t b, std::size_t n) {
    int v = 0;
    for (std::size_t i = b; i < b + n; ++i) v = v * 10 + (s[i] - '0');
    return v;
  };
  Date d{num(0, 4), num(4, 2), num(6, 2)};
  const std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                        std::chrono::month{static_cast<unsigned>(d.month)},
                                        std::chrono::day{static_cast<unsigned>(d.day)}};
  if (!ymd.ok() || d.year == 0) return std::nullopt;
  return d;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d%02d%02d", year, month, day);
  return buf;
}

bool is_country_code(std::string_view s) {
  return s.size() == 2 && text::is_ascii_upper(s[0]) && text::is_ascii_upper(s[1]);
}

char gazette_letter(GazetteKind kind) {
  switch (kind) {
    case GazetteKind::PublishedApplication: return 'A';
    case GazetteKind::PctTranslation: return 'T';
    case GazetteKind::PctDomesticRepublication: return 'S';
  }
  return '?';
}

std::optional<GazetteKind> gazette_from_letter(char letter) {
  switch (letter) {
    case 'A': return GazetteKind::PublishedApplication;
    case 'T': return GazetteKind::PctTranslation;
    case 'S': return GazetteKind::PctDomesticRepublication;
    default: return std::nullopt;
  }
}

std::string normalize_doc_number(std::string_view doc_number) {
  auto s = text::alnum_upper(doc_number);
  const auto first = s.find_first_not_of('0');
  return first == std::string::npos ? std::string() : s.substr(first);
}

std::optional<std::string> normalize_ipc(std::string_view raw) {
  static const std::regex kIpc(
      R"(^([A-H])\s*([0-9]{2})\s*([A-Z])(?:\s*([0-9]{1,4})\s*/\s*([0-9]{2,6}))?(?:\s+.*)?$)");
  const auto collapsed = text::collapse_whitespace(raw);
  std::smatch m;
  if (!std::regex_match(collapsed, m, kIpc)) return std::nullopt;
  std::string out = m[1].str() + m[2].str() + m[3].str();
  if (m[4].matched) out += " " + m[4].str() + "/" + m[5].str();
  return out;
}

}  // namespace patbitext
