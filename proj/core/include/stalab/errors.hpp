#pragma once

#include <stdexcept>
#include <string>

namespace stalab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// n_b, tau_b, T and T_r of a CAB sequence do not describe the same lattice.
class InconsistentBlochCount : public Error {
 public:
  using Error::Error;
};

class OverlappingSegments : public Error {
 public:
  using Error::Error;
};

/// Final velocities differ, so the output ports cannot interfere in the far field.
class NotInterfering : public Error {
 public:
  using Error::Error;
};

class UnsupportedWaveform : public Error {
 public:
  using Error::Error;
};

/// The space-time area vanishes; use the antisymmetric sensitivity instead.
class ZeroArea : public Error {
 public:
  using Error::Error;
};

/// The two arms never separate.
class DegenerateSequence : public Error {
 public:
  using Error::Error;
};

/// A numerical oracle failed its own refinement check.
class ToleranceNotMet : public Error {
 public:
  using Error::Error;
};

/// A sequence document could not be read. `field()` is a JSON pointer to the
/// offending value (empty for syntax errors); `line()` is 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string field, int line = 0)
      : Error(message), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

}  // namespace stalab
