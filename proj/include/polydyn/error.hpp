#pragma once

#include <stdexcept>
#include <string>

namespace polydyn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interfaces of lenses, functions or diagrams do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Duplicate or unknown element/position labels.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// A construction would exceed a configured size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace polydyn
