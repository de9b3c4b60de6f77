#pragma once

#include <stdexcept>
#include <string>

namespace tbqkd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad run configuration (unknown preset, invalid field, missing seed, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Malformed or version-mismatched data file (tag streams, estimates).
struct DataFormatError : Error {
    using Error::Error;
};

/// An estimator was asked to run on a block with no counts in a required basis pair.
struct EmptyBlockError : Error {
    using Error::Error;
};

/// Delay-histogram calibration found no usable peak structure.
struct NoPeaksError : Error {
    using Error::Error;
};

}  // namespace tbqkd
