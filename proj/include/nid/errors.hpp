#pragma once

#include <stdexcept>
#include <string>

namespace nid {

// Bad or inconsistent input data (duplicate labels, invalid provider, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A spawned external tool failed (not found, nonzero exit, empty output).
class ExternalToolError : public std::runtime_error {
public:
    explicit ExternalToolError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nid
