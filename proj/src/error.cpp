#include "ksorder/error.hpp"

namespace ksorder {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::overflow: return "arithmetic overflow";
    case ErrorKind::out_of_range: return "out of range";
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::capacity: return "capacity exceeded";
    case ErrorKind::incomplete_sequence: return "incomplete sequence";
    case ErrorKind::undiscoverable_scene: return "undiscoverable scene";
    case ErrorKind::configuration: return "configuration error";
    case ErrorKind::parse: return "parse error";
  }
  return "unknown error";
}

}  // namespace ksorder
