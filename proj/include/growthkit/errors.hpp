#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace growthkit {

/// Operands from different groups, or an encoding that is not an element of
/// the group it is used with.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed element literal or group descriptor. `position()` is the byte
/// offset into the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called outside its stated hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed set would exceed the configured element budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t budget)
      : std::runtime_error(what), budget_(budget) {}

  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// An inequality that holds unconditionally under the operation's
/// hypotheses failed. Always a bug in this library.
class SoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed corpus or fuzz configuration.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace growthkit
