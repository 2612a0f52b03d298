#pragma once

#include <stdexcept>
#include <string>

namespace carlab {

/// Failure categories shared by the library and the experiment runner.
enum class ErrorKind {
  invalid_input,
  domain,
  size_limit,
  level,
  invariant,
  io,
};

const char* to_string(ErrorKind kind);

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

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class SizeLimitError : public Error {
public:
  explicit SizeLimitError(const std::string& what)
      : Error(ErrorKind::size_limit, what) {}
};

class LevelError : public Error {
public:
  explicit LevelError(const std::string& what) : Error(ErrorKind::level, what) {}
};

class InvariantViolation : public Error {
public:
  explicit InvariantViolation(const std::string& what)
      : Error(ErrorKind::invariant, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

} // namespace carlab
