#pragma once

#include <stdexcept>
#include <string>

namespace hits {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kComputation = 3,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Bad flags, bad parameters, impossible sampler/splitter settings.
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kUsage; }
};

// Input files that violate their schema or the corpus invariants.
class DataError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kData; }
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IntegrityError : public DataError {
 public:
  using DataError::DataError;
};

class LookupError : public DataError {
 public:
  using DataError::DataError;
};

// Numerical failures: zero vectors, undefined metrics, contract violations.
class ComputationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kComputation; }
};

class DegenerateInputError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class UndefinedMetricError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class TrainingError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace hits
