#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcorr {

/// Closed-form path cannot be evaluated for these parameters (e.g. lambda == 0).
class UnsupportedParameters : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numerical routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run configuration failed validation. field() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed JSON text; line and column are 1-based.
class ConfigParseError : public ConfigError {
 public:
  ConfigParseError(std::size_t line, std::size_t column, const std::string& message)
      : ConfigError("", "parse error at line " + std::to_string(line) + ", column " +
                            std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qcorr
