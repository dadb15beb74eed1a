#pragma once

#include <stdexcept>
#include <string>

namespace flagram {

enum class ErrorKind {
  validation,     // malformed or inconsistent user input
  format,         // unparsable file content
  dimension,      // file content disagrees with the problem's shape
  resource,       // configured caps exceeded
  certification,  // rounding/verification could not produce a certificate
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Process exit code used by the CLI for this error class.
  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::resource:
        return 3;
      case ErrorKind::certification:
        return 4;
      default:
        return 2;
    }
  }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& what) { return {ErrorKind::validation, what}; }
inline Error resource_error(const std::string& what) { return {ErrorKind::resource, what}; }
inline Error certification_error(const std::string& what) {
  return {ErrorKind::certification, what};
}
inline Error dimension_error(const std::string& what) { return {ErrorKind::dimension, what}; }

inline Error format_error(int line, const std::string& what) {
  return {ErrorKind::format, "line " + std::to_string(line) + ": " + what};
}

}  // namespace flagram
