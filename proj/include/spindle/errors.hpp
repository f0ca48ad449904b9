#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spindle {

// Validation errors are caller mistakes (bad input, infeasible model);
// numeric errors are failures of an iterative kernel. The CLI maps the
// two kinds to exit codes 2 and 3.
enum class ErrorKind { Validation, Numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, std::string message)
      : std::runtime_error(code + ": " + message),
        kind_(kind),
        code_(std::move(code)),
        message_(std::move(message)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string code_;
  std::string message_;
};

[[noreturn]] inline void throw_validation(std::string code, std::string message) {
  throw Error(ErrorKind::Validation, std::move(code), std::move(message));
}

[[noreturn]] inline void throw_numeric(std::string code, std::string message) {
  throw Error(ErrorKind::Numeric, std::move(code), std::move(message));
}

}  // namespace spindle
