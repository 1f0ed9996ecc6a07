#pragma once

#include <stdexcept>
#include <string>

namespace rollgeo {

// Input data violates a stated invariant (corrupted state, bad config,
// precondition failure). Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation hit a degenerate configuration or failed to converge.
// Maps to CLI exit code 2.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rollgeo
