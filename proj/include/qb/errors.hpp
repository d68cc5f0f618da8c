#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qb {

// Base class for all errors raised by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value was used at an incompatible type (e.g. composing homs whose
// endpoints do not meet, or joining homs of different types).
struct type_error : error {
    using error::error;
};

// Malformed or inconsistent input data: unknown ids, unreadable files,
// non-faithful presentations, invalid adjunction certificates.
struct data_error : error {
    using error::error;
};

// An enumeration grew past its configured cap. Never silently truncated.
struct cap_exceeded : error {
    std::size_t cap;
    explicit cap_exceeded(std::size_t cap_, const std::string& what_arg)
        : error(what_arg), cap(cap_) {}
};

}  // namespace qb
