#pragma once

#include <stdexcept>
#include <string>

namespace orw {

/// A caller-supplied parameter violates a documented precondition.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input data is structurally invalid (non-symmetric matrix, malformed file, ...).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A random-walk quantity was requested on a disconnected graph.
class DisconnectedGraphError : public std::runtime_error {
public:
    explicit DisconnectedGraphError(const std::string& what) : std::runtime_error(what) {}
};

/// Zero-degree node or coincident degenerate geometry.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Monte-Carlo estimation could not produce a value (e.g. every walk truncated).
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orw
