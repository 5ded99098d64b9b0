#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vrid {

/// Precondition violated by a caller-supplied argument.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. Carries the path and 1-based line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Trace content that parses but cannot be processed (e.g. zero-norm quaternion).
class DataQualityError : public std::runtime_error {
 public:
  DataQualityError(const std::string& what, std::size_t sample_index)
      : std::runtime_error(what), sample_index_(sample_index) {}

  std::size_t sample_index() const noexcept { return sample_index_; }

 private:
  std::size_t sample_index_;
};

/// A trace is too short for the requested train/test split.
class InsufficientDurationError : public std::runtime_error {
 public:
  InsufficientDurationError(const std::string& what, double shortfall_s)
      : std::runtime_error(what), shortfall_s_(shortfall_s) {}

  double shortfall() const noexcept { return shortfall_s_; }

 private:
  double shortfall_s_;
};

/// Model training could not proceed on the given data.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vrid
