#pragma once

#include <stdexcept>

namespace scaleplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested loss is at or below the asymptote, or out of reach at the given size.
class UnachievableLoss : public Error {
 public:
  using Error::Error;
};

// Iteration cap hit before reaching tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Bracketing failed: no sign change along the search direction.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

// Too few runs, or runs that do not span enough distinct sizes / token counts.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Field values rejected at construction.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents; messages carry line numbers where applicable.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace scaleplan
