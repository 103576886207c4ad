#pragma once

#include <stdexcept>
#include <string>

namespace chowkit {

/// Malformed or precondition-violating input. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured size limit (e.g. subcurve enumeration) was exceeded.
class SizeLimitError : public InputError {
 public:
  explicit SizeLimitError(const std::string& what) : InputError(what) {}
};

}  // namespace chowkit
