#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spdcl {

/// Coarse failure classes. The CLI maps each one to its own exit code and
/// prints the category name as the first token of the diagnostic line.
enum class ErrorCategory {
  kInvalidArgument,  // violated precondition on in-process input
  kUsage,            // bad command line
  kIo,               // file could not be opened/written
  kFormat,           // file content does not match its schema
  kConfig,           // run configuration rejected
  kMismatch,         // inconsistent artifacts (epoch/history/sample sets)
};

std::string_view category_name(ErrorCategory category);
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCategory::kInvalidArgument, message);
}

}  // namespace spdcl
