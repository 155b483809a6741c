#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace estmap {

/// Base of every error the toolkit throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `location` is a 1-based line number for line-oriented
/// formats and a 0-based byte offset for query strings; `unit` says which.
class ParseError : public Error {
public:
  enum class Unit { line, offset };

  ParseError(const std::string& what, std::size_t location, Unit unit = Unit::line)
      : Error(what + (unit == Unit::line ? " (line " : " (offset ") +
              std::to_string(location) + ")"),
        location_(location),
        unit_(unit) {}

  std::size_t location() const noexcept { return location_; }
  Unit unit() const noexcept { return unit_; }

private:
  std::size_t location_;
  Unit unit_;
};

/// Missing file, unreadable file, or a configuration value out of range.
class InputError : public Error {
public:
  using Error::Error;
};

/// A statistical procedure was asked to run on too few observations.
class SampleTooSmall : public Error {
public:
  using Error::Error;
};

}  // namespace estmap
