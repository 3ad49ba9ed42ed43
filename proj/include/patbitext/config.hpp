#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace patbitext {

// Flat key/value view of a TOML-style file: `key = value` lines, optional
// `[section]` headers (keys become "section.key"), `#` comments, values
// bare or double-quoted. Enough for parameter files; not a TOML parser.
class ConfigFile {
 public:
  static ConfigFile parse(std::string_view content);
  static ConfigFile load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<long long> get_int(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace patbitext
