// errors.hpp — typed error hierarchy; every failure the library can signal.
#pragma once

#include <stdexcept>
#include <string>

namespace meyerdens {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid resolution bookkeeping (level ordering, grid size, depth).
struct SpecError : Error {
    using Error::Error;
};

/// Bad sample data: empty input, values outside [0,1] where required,
/// degenerate (zero-range) samples.
struct DomainError : Error {
    using Error::Error;
};

/// A noise model whose Fourier coefficient magnitude falls below the
/// configured floor somewhere on a band in use; dividing would blow up.
struct IllPosedBand : Error {
    using Error::Error;
};

/// A Fourier grid or reconstruction grid too small to cover the band
/// support of the coefficients involved.
struct GridError : Error {
    using Error::Error;
};

/// Invalid experiment or estimation configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// File input/output failure, annotated with the offending path.
struct IoError : Error {
    using Error::Error;
};

} // namespace meyerdens
