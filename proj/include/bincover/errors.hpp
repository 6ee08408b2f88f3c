#pragma once

#include <stdexcept>
#include <string>

namespace bincover {

// Value outside the domain an operation accepts (negative size, k < 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed instance, certificate or tape text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Advice tape ended in the middle of a field.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tape decoded cleanly but the payload breaks the advice invariants.
class MalformedAdvice : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact solver refused an instance above its size limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certificate failed verification; the message names bin and reason.
class InvalidCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bincover
