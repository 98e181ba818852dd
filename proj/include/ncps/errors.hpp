#pragma once

#include <stdexcept>
#include <string>

namespace ncps {

// Bad argument values (nonpositive step, negative quantum number, ...).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Number of axes does not match NCSpace::dim.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Time or coordinate outside the window an object was built for.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Grid would exceed the configured memory cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation has no closed form for the requested state (e.g. excited momentum wavefunction).
struct UnsupportedStateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input data failed a numerical sanity check (unnormalized density, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ncps
