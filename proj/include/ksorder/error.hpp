#pragma once

#include <stdexcept>
#include <string>

namespace ksorder {

enum class ErrorKind {
  overflow,
  out_of_range,
  invalid_argument,
  capacity,
  incomplete_sequence,
  undiscoverable_scene,
  configuration,
  parse,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers (mainly the
/// CLI) how to classify the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ksorder
