#pragma once

#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>

namespace patbitext {

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

LogLevel parse_log_level(std::string_view name);

// Line-delimited JSON records: {"level","stage","pair_id","event","counts"}.
class Logger {
 public:
  explicit Logger(std::ostream& out, LogLevel level = LogLevel::Info) : out_(&out), level_(level) {}

  void log(LogLevel level, std::string_view stage, std::string_view event,
           const std::map<std::string, long long>& counts = {}, std::string_view pair_id = {},
           std::string_view detail = {});

  void set_level(LogLevel level) { level_ = level; }
  LogLevel level() const { return level_; }

 private:
  std::ostream* out_;
  LogLevel level_;
  std::mutex mu_;
};

}  // namespace patbitext
