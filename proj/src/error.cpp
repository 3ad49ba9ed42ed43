#include "patbitext/error.hpp"

namespace patbitext {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedRecord: return "malformed_record";
    case Errc::UnknownKind: return "unknown_kind";
    case Errc::UnparseablePctNumber: return "unparseable_pct_number";
    case Errc::DuplicateSubject: return "duplicate_subject";
    case Errc::SizeLimit: return "size_limit";
    case Errc::LengthMismatch: return "length_mismatch";
    case Errc::InvariantViolation: return "invariant_violation";
    case Errc::InvalidSpec: return "invalid_spec";
    case Errc::MalformedLine: return "malformed_line";
    case Errc::DuplicateId: return "duplicate_id";
    case Errc::Io: return "io_error";
    case Errc::Usage: return "usage_error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

void Diagnostics::warn(Errc code, std::string message) {
  items_.push_back({code, std::move(message)});
}

void Diagnostics::merge(const Diagnostics& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::size_t Diagnostics::count(Errc code) const {
  std::size_t n = 0;
  for (const auto& w : items_) {
    if (w.code == code) ++n;
  }
  return n;
}

std::map<std::string, std::size_t> Diagnostics::counts_by_code() const {
  std::map<std::string, std::size_t> out;
  for (const auto& w : items_) ++out[std::string(errc_name(w.code))];
  return out;
}

}  // namespace patbitext
