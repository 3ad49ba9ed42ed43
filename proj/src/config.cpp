#include "patbitext/config.hpp"

#include <charconv>

#include "patbitext/error.hpp"
#include "patbitext/io.hpp"
#include "patbitext/text.hpp"

namespace patbitext {

ConfigFile ConfigFile::parse(std::string_view content) {
  ConfigFile cfg;
  std::string section;
  std::size_t line_no = 0;
  for (auto raw : io::split_lines(content)) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw InvalidSpec("config line " + std::to_string(line_no) + ": unterminated section");
      }
      section = std::string(text::trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidSpec("config line " + std::to_string(line_no) + ": expected key = value");
    }
    auto key = std::string(text::trim(line.substr(0, eq)));
    auto value = text::trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '"') {
      const auto close = value.find('"', 1);
      if (close == std::string_view::npos) {
        throw InvalidSpec("config line " + std::to_string(line_no) + ": unterminated string");
      }
      value = value.substr(1, close - 1);
    } else if (const auto hash = value.find('#'); hash != std::string_view::npos) {
      value = text::trim(value.substr(0, hash));
    }
    if (key.empty()) throw InvalidSpec("config line " + std::to_string(line_no) + ": empty key");
    cfg.values_[section.empty() ? key : section + "." + key] = std::string(value);
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  return parse(io::read_file(path));
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ConfigFile::get_double(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  try {
    std::size_t used = 0;
    double d = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return d;
  } catch (const std::exception&) {
    throw InvalidSpec("config key " + key + ": not a number: " + *v);
  }
}

std::optional<long long> ConfigFile::get_int(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw InvalidSpec("config key " + key + ": not an integer: " + *v);
  }
  return out;
}

}  // namespace patbitext
