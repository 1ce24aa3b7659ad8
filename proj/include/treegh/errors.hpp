#pragma once

#include <stdexcept>
#include <string>

namespace treegh {

/// Malformed input, violated precondition or invalid parameter.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A brute-force oracle or solver was asked to run past its size guard.
class SizeLimitError : public std::length_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::length_error(what) {}
};

}  // namespace treegh
