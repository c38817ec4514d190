#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kgk {

// Error categories; the numeric values double as CLI exit codes.
enum class ErrorKind {
  Validation = 1,    // malformed input or a graph axiom violated
  Precondition = 2,  // an operation was called outside its domain
  Invariant = 3,     // a theorem-backed internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what),
        kind_(kind),
        code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

  static Error validation(std::string code, const std::string& what) {
    return Error(ErrorKind::Validation, std::move(code), what);
  }
  static Error precondition(std::string code, const std::string& what) {
    return Error(ErrorKind::Precondition, std::move(code), what);
  }
  static Error invariant(std::string code, const std::string& what) {
    return Error(ErrorKind::Invariant, std::move(code), what);
  }

 private:
  ErrorKind kind_;
  std::string code_;
};

}  // namespace kgk
