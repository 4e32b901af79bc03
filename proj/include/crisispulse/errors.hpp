#pragma once

#include <stdexcept>
#include <string>

namespace crisispulse {

// Bad data or configuration. CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A value that could not be parsed; carries the offending text.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::string raw)
      : ValidationError(what + ": \"" + raw + "\""), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

// A required input file is absent. CLI maps this to exit code 2.
class MissingInputError : public std::runtime_error {
 public:
  explicit MissingInputError(std::string path)
      : std::runtime_error("missing required input: " + path), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace crisispulse
