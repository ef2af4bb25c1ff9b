#pragma once

#include <stdexcept>
#include <string>

namespace nblp {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (ring specs, matrix files, LP dumps, ...).
struct ParseError : Error {
  using Error::Error;
};

/// An enumeration or construction would exceed a configured cap.
/// Raised instead of silently truncating.
struct SizeError : Error {
  using Error::Error;
};

}  // namespace nblp
