#pragma once

#include <stdexcept>
#include <string>

namespace latticecalc {

// Domain errors are violations of a mathematical precondition (exit status 2
// in the CLI); input errors are malformed files, unknown labels and the like
// (exit status 1).
enum class ErrorCategory { domain, input };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string code, const std::string& message)
      : std::runtime_error(message), category_(category), code_(std::move(code)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorCategory category_;
  std::string code_;
};

[[noreturn]] inline void domain_error(std::string code, const std::string& message) {
  throw Error(ErrorCategory::domain, std::move(code), message);
}

[[noreturn]] inline void input_error(std::string code, const std::string& message) {
  throw Error(ErrorCategory::input, std::move(code), message);
}

}  // namespace latticecalc
