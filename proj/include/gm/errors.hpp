#pragma once

#include <stdexcept>
#include <string>

namespace gm {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SelfLoopError : GraphError {
    explicit SelfLoopError(unsigned v)
        : GraphError("self-loop at vertex " + std::to_string(v)), vertex(v) {}
    unsigned vertex;
};

struct VertexOutOfRangeError : GraphError {
    VertexOutOfRangeError(unsigned v, unsigned n)
        : GraphError("vertex " + std::to_string(v) + " out of range [0," +
                     std::to_string(n) + ")") {}
};

struct BadParamError : GraphError {
    using GraphError::GraphError;
};

struct BadConfigError : GraphError {
    using GraphError::GraphError;
};

struct OrbitOutOfRangeError : GraphError {
    explicit OrbitOutOfRangeError(int i)
        : GraphError("orbit index " + std::to_string(i) + " out of range [0,30)") {}
};

struct EmptyGraphError : GraphError {
    using GraphError::GraphError;
};

struct NotNormalizedError : GraphError {
    using GraphError::GraphError;
};

struct ModelMismatchError : GraphError {
    using GraphError::GraphError;
};

struct MissingGraphError : GraphError {
    using GraphError::GraphError;
};

struct MetricUnavailableError : GraphError {
    using GraphError::GraphError;
};

struct SizeMismatchError : GraphError {
    using GraphError::GraphError;
};

struct BadKError : GraphError {
    using GraphError::GraphError;
};

struct BadClusteringError : GraphError {
    using GraphError::GraphError;
};

struct EmptyRangeError : GraphError {
    using GraphError::GraphError;
};

struct BadAlphaError : GraphError {
    using GraphError::GraphError;
};

struct NegativeDcovError : GraphError {
    using GraphError::GraphError;
};

struct DomainMismatchError : GraphError {
    using GraphError::GraphError;
};

struct IoError : GraphError {
    using GraphError::GraphError;
};

} // namespace gm
