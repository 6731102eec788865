#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charp {

/// Malformed expression, curve file or point file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

/// A mathematical precondition does not hold (supersingular place, point
/// outside the formal group, non-minimal model, division by zero, ...).
class MathError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested precision could not be reached within the configured caps,
/// or too little precision was supplied to decide a question.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, long achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  long achieved() const { return achieved_; }

 private:
  long achieved_;
};

/// An internal consistency assertion failed. Signals a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace charp
