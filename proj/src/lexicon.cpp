#include "patbitext/lexicon.hpp"

#include <algorithm>

#include "patbitext/text.hpp"

namespace patbitext::align {

void BilingualLexicon::add(std::string_view japanese, std::string_view english) {
  ++entry_count_;
  auto& senses = map_[std::string(japanese)];
  auto lower = text::to_lower_ascii(english);
  if (std::find(senses.begin(), senses.end(), lower) == senses.end()) {
    senses.push_back(std::move(lower));
  }
  max_key_bytes_ = std::max(max_key_bytes_, japanese.size());
}

const std::vector<std::string>* BilingualLexicon::lookup(std::string_view japanese) const {
  auto it = map_.find(std::string(japanese));
  return it == map_.end() ? nullptr : &it->second;
}

bool BilingualLexicon::links(std::string_view japanese, std::string_view english) const {
  const auto* senses = lookup(japanese);
  if (senses == nullptr) return false;
  const auto lower = text::to_lower_ascii(english);
  return std::find(senses->begin(), senses->end(), lower) != senses->end();
}

}  // namespace patbitext::align
