#pragma once

#include <stdexcept>
#include <string>

namespace gchord {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed word literal or presentation file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A computation was asked to run on a ball that is too small to certify its
// answer for the whole Cayley graph.
class RadiusError : public Error {
 public:
  using Error::Error;
};

// A configured resource limit (vertex cap, state cap) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gchord
