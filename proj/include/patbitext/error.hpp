#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace patbitext {

enum class Errc {
  MalformedRecord,
  UnknownKind,
  UnparseablePctNumber,
  DuplicateSubject,
  SizeLimit,
  LengthMismatch,
  InvariantViolation,
  InvalidSpec,
  MalformedLine,
  DuplicateId,
  Io,
  Usage,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

#define PATBITEXT_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& message) : Error(Errc::Name, message) {} \
  };

PATBITEXT_DEFINE_ERROR(MalformedRecord)
PATBITEXT_DEFINE_ERROR(UnknownKind)
PATBITEXT_DEFINE_ERROR(SizeLimit)
PATBITEXT_DEFINE_ERROR(LengthMismatch)
PATBITEXT_DEFINE_ERROR(InvariantViolation)
PATBITEXT_DEFINE_ERROR(InvalidSpec)

#undef PATBITEXT_DEFINE_ERROR

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(Errc::Io, path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error(Errc::Usage, message) {}
};

struct Warning {
  Errc code;
  std::string message;
};

// Non-fatal data problems collected while processing a batch.
class Diagnostics {
 public:
  void warn(Errc code, std::string message);
  void merge(const Diagnostics& other);

  std::size_t count() const noexcept { return items_.size(); }
  std::size_t count(Errc code) const;
  const std::vector<Warning>& items() const noexcept { return items_; }
  std::map<std::string, std::size_t> counts_by_code() const;

 private:
  std::vector<Warning> items_;
};

}  // namespace patbitext
