#include "patbitext/log.hpp"

#include "json.hpp"

#include "patbitext/error.hpp"

namespace patbitext {

namespace {
std::string_view level_name(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warn: return "warn";
    case LogLevel::Error: return "error";
    case LogLevel::Off: return "off";
  }
  return "info";
}
}  // namespace

LogLevel parse_log_level(std::string_view name) {
  if (name == "debug") return LogLevel::Debug;
  if (name == "info") return LogLevel::Info;
  if (name == "warn") return LogLevel::Warn;
  if (name == "error") return LogLevel::Error;
  if (name == "off") return LogLevel::Off;
  throw UsageError("unknown log level: " + std::string(name));
}

void Logger::log(LogLevel level, std::string_view stage, std::string_view event,
                 const std::map<std::string, long long>& counts, std::string_view pair_id,
                 std::string_view detail) {
  if (level < level_ || level_ == LogLevel::Off) return;
  nlohmann::ordered_json rec;
  rec["level"] = level_name(level);
  rec["stage"] = stage;
  if (!pair_id.empty()) rec["pair_id"] = pair_id;
  rec["event"] = event;
  if (!counts.empty()) rec["counts"] = counts;
  if (!detail.empty()) rec["detail"] = detail;
  const auto line = rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  std::lock_guard lock(mu_);
  *out_ << line << '\n';
}

}  // namespace patbitext
