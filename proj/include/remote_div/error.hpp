#pragma once

#include <stdexcept>
#include <string>

namespace rdiv {

// A caller-supplied argument or dataset violates an operation's
// precondition (odd k for matching, n < 3k, enumeration cap exceeded...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal guarantee failed. Seeing one of these is a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input document, or a matrix that is not a metric.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rdiv
