#pragma once

#include <stdexcept>
#include <string>

namespace mhaar {

// Malformed input: bad rationals, unknown specs, out-of-range indices.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Well-formed input that violates a mathematical hypothesis (e.g. CZ with ||f||_1 >= lambda).
struct PreconditionError : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace mhaar
