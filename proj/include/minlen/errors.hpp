#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace minlen {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset),
        message_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

/// Domain violation while evaluating an expression (sqrt of a negative, ...).
class EvalError : public Error {
 public:
  EvalError(std::string node, double y, const std::string& reason)
      : Error(reason + " in '" + node + "' at y=" + std::to_string(y)),
        node_(std::move(node)),
        y_(y) {}

  const std::string& node() const noexcept { return node_; }
  double y() const noexcept { return y_; }

 private:
  std::string node_;
  double y_;
};

class ProfileError : public Error {
 public:
  enum class Kind { NotOdd, NotMonotone, ZeroSlopeAtOrigin, BadBound, NotEvaluable };

  ProfileError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class QuadratureError : public Error {
 public:
  enum class Kind { ToleranceNotReached, NonFiniteIntegrand, DivergedAtEndpoint };

  QuadratureError(Kind kind, const std::string& what, double best_value = 0.0)
      : Error(what), kind_(kind), best_value_(best_value) {}

  Kind kind() const noexcept { return kind_; }
  double best_value() const noexcept { return best_value_; }

 private:
  Kind kind_;
  double best_value_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NoBracketFound : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace minlen
