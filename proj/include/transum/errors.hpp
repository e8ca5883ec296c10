#pragma once

#include <stdexcept>
#include <string>

namespace transum {

/// Bad user input: unreadable files, malformed corpora, mismatched ids.
/// The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A violated internal invariant (e.g. an iteration guard tripping).
/// The CLI maps this to exit code 3.
class internal_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace transum
