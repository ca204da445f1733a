#pragma once

#include <stdexcept>
#include <string>

namespace maxplus {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural validation failures.
class BadOrder : public Error {
 public:
  using Error::Error;
};

class BadLength : public Error {
 public:
  using Error::Error;
};

class SignViolation : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A step function was called for the wrong iteration index.
class StepError : public Error {
 public:
  using Error::Error;
};

// Path/pattern enumeration exceeded its explicit cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Polynomial/CA state rejections.
class NotARun : public Error {
 public:
  using Error::Error;
};

class ZeroState : public Error {
 public:
  using Error::Error;
};

// Text format and file-system failures.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A benchmark rep disagreed with the reference checksum.
class ChecksumMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace maxplus
