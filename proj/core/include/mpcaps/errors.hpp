#pragma once

#include <stdexcept>
#include <string>

namespace mpcaps {

// Malformed or inconsistent on-disk data (bad magic, truncation, checksum).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values or failed numeric preconditions at runtime.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Inputs that make the requested statistic/distribution undefined
// (all-zero differences, all capsule norms below threshold, ...).
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mpcaps
