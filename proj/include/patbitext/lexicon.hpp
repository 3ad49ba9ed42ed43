#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace patbitext::align {

// Japanese headword -> English headwords. English entries are stored
// lower-cased so lookups are case-insensitive on the English side.
class BilingualLexicon {
 public:
  void add(std::string_view japanese, std::string_view english);

  // English senses of `japanese`; nullptr if absent.
  const std::vector<std::string>* lookup(std::string_view japanese) const;
  bool contains_key(std::string_view japanese) const { return lookup(japanese) != nullptr; }
  bool links(std::string_view japanese, std::string_view english) const;

  // Number of accepted entries (lines), duplicates included.
  std::size_t entry_count() const { return entry_count_; }
  std::size_t key_count() const { return map_.size(); }
  std::size_t max_key_bytes() const { return max_key_bytes_; }

 private:
  std::unordered_map<std::string, std::vector<std::string>> map_;
  std::size_t entry_count_ = 0;
  std::size_t max_key_bytes_ = 0;
};

}  // namespace patbitext::align
