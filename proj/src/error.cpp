#include "spdcl/error.hpp"

namespace spdcl {

std::string_view category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kInvalidArgument: return "invalid-argument";
    case ErrorCategory::kUsage: return "usage";
    case ErrorCategory::kIo: return "io";
    case ErrorCategory::kFormat: return "format";
    case ErrorCategory::kConfig: return "config";
    case ErrorCategory::kMismatch: return "mismatch";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kInvalidArgument: return 3;
    case ErrorCategory::kUsage: return 2;
    case ErrorCategory::kIo: return 4;
    case ErrorCategory::kFormat: return 5;
    case ErrorCategory::kConfig: return 6;
    case ErrorCategory::kMismatch: return 7;
  }
  return 1;
}

}  // namespace spdcl
