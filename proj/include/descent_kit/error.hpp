#pragma once

#include <stdexcept>
#include <string>

namespace descent_kit {

enum class ErrorKind {
  InfiniteQuotient,
  SizeLimitExceeded,
  RingMismatch,
  InvalidDatum,
  NotProjective,
  ParseError,
  ValidationError,
  CapExceeded,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InfiniteQuotient: return "InfiniteQuotient";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::InvalidDatum: return "InvalidDatum";
    case ErrorKind::NotProjective: return "NotProjective";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace descent_kit
