#include "hqc/error.hpp"

namespace hqc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::amplitude_guard: return "amplitude_guard";
    case ErrorKind::invalid_operator: return "invalid_operator";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::undefined_conditional: return "undefined_conditional";
    case ErrorKind::sampling: return "sampling";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace hqc
