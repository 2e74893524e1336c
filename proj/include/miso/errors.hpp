#pragma once

#include <stdexcept>
#include <string>

namespace miso {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed graph text or JSON input.
struct ParseError : Error {
  using Error::Error;
};

/// An enumeration or search exceeded its configured size cap.
struct CapExceeded : Error {
  using Error::Error;
};

}  // namespace miso
