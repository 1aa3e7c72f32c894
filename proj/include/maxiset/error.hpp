#pragma once

#include <stdexcept>
#include <string>

namespace maxiset {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  invalid_input,      // exit 2
  infeasible_design,  // exit 3
  numeric_failure,    // exit 4
  io_failure,         // exit 5
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::invalid_input, what) {}
};

class InfeasibleDesign : public Error {
 public:
  explicit InfeasibleDesign(const std::string& what)
      : Error(ErrorKind::infeasible_design, what) {}
};

class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& what)
      : Error(ErrorKind::numeric_failure, what) {}
};

class IoFailure : public Error {
 public:
  explicit IoFailure(const std::string& what)
      : Error(ErrorKind::io_failure, what) {}
};

int exit_code(ErrorKind kind) noexcept;

}  // namespace maxiset
