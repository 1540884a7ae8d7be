#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace maxplus {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands have incompatible dimensions.
struct DimensionError : Error {
    using Error::Error;
};

/// A quantity that needs a cycle was asked of an acyclic graph.
struct AcyclicError : Error {
    using Error::Error;
};

/// An operation that needs a strongly connected digraph got a reducible one.
struct ReducibleError : Error {
    using Error::Error;
};

/// The Kleene star series diverges; carries a positive-mean cycle witness.
struct DivergenceError : Error {
    std::vector<int> cycle;   // node indices, 0-based
    std::string mean;
    DivergenceError(const std::string& msg, std::vector<int> c, std::string m)
        : Error(msg), cycle(std::move(c)), mean(std::move(m)) {}
};

/// An exponential search was refused because the graph exceeds the node limit.
struct SizeLimitError : Error {
    int size;
    int limit;
    SizeLimitError(const std::string& msg, int sz, int lim)
        : Error(msg), size(sz), limit(lim) {}
};

/// Malformed instance text.
struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int l, int c) : Error(msg), line(l), col(c) {}
};

/// Instance generation could not satisfy the requested constraints.
struct GenerationError : Error {
    using Error::Error;
};

/// An internal consistency check that a theorem guarantees has failed.
/// Carries a dump of the offending instance; treated as a bug, never caught.
struct FalsificationError : Error {
    std::string dump;
    FalsificationError(const std::string& msg, std::string d)
        : Error(msg), dump(std::move(d)) {}
};

}  // namespace maxplus
