#include "mochain/error.hpp"

namespace mochain {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::singular_minor: return "singular_minor";
    case ErrorKind::structure: return "structure";
    case ErrorKind::positivity: return "positivity";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::sizing: return "sizing";
    case ErrorKind::parse: return "parse";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::index: return "index";
  }
  return "unknown";
}

}  // namespace mochain
