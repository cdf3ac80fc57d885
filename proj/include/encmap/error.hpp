#pragma once

#include <stdexcept>
#include <string>

namespace encmap {

// Exit statuses used by the command-line tool.
enum class ExitCode : int { kOk = 0, kConfig = 2, kRuntime = 3, kIo = 4 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const { return ExitCode::kRuntime; }
};

// Bad user-supplied parameters (scenario values, CLI flags).
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kConfig; }
};

// Operation called with arguments outside its contract.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Geometric query outside its domain (e.g. a point inside a hole).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Division by a zero normaliser in the Betti function.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kIo; }
};

class ParseError : public IoError {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : IoError(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace encmap
