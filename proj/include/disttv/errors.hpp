#pragma once

#include <stdexcept>

namespace disttv {

// Enumeration limits, size guards, and exact-integer overflows. The instance
// is too large for the exact desk-scale algorithms, not malformed.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (graph files, marginal files, eta files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace disttv
