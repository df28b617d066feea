#pragma once

#include <stdexcept>
#include <string>

namespace treeembed {

/// Malformed or inconsistent input: bad ids, broken preconditions, parse errors.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Instance too large for an exact search mode.
class SizeError : public std::length_error {
 public:
  explicit SizeError(const std::string& what) : std::length_error(what) {}
};

}  // namespace treeembed
