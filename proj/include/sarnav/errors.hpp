#pragma once

#include <stdexcept>
#include <string>

namespace sarnav {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data: config files, parameter guards, invariant violations.
// The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Config file could not be parsed at all.
class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& msg) : ValidationError(msg) {}
};

// Attitude error outside the small-angle regime of the linearized dynamics.
class LargeAngleError : public ValidationError {
public:
    explicit LargeAngleError(const std::string& msg) : ValidationError(msg) {}
};

// Closest approach fell on the first or last pulse of the aperture.
class EdgeMinimumError : public Error {
public:
    explicit EdgeMinimumError(const std::string& msg) : Error(msg) {}
};

// Matched-filter replica does not fit the fast-time window.
class ShapeMismatchError : public Error {
public:
    explicit ShapeMismatchError(const std::string& msg) : Error(msg) {}
};

// Image has no usable peak (all zero or all equal magnitudes).
class DegenerateImageError : public Error {
public:
    explicit DegenerateImageError(const std::string& msg) : Error(msg) {}
};

// A profile never falls below the 3 dB threshold inside the grid.
class UnboundedError : public Error {
public:
    explicit UnboundedError(const std::string& msg) : Error(msg) {}
};

} // namespace sarnav
