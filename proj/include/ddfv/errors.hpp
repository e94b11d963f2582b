#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddfv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// mesh
// ---------------------------------------------------------------------------

class MeshError : public Error {
public:
    enum class Kind { NonConvexDiamond, NonManifoldEdge, NegativeArea, DegenerateCell, Validation };

    MeshError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// ---------------------------------------------------------------------------
// operators / scheme
// ---------------------------------------------------------------------------

class NotSPD : public Error {
public:
    using Error::Error;
};

class BadBeta : public Error {
public:
    using Error::Error;
};

class NonPositiveState : public Error {
public:
    using Error::Error;
};

class NegativeInitialData : public Error {
public:
    using Error::Error;
};

class BadParameter : public Error {
public:
    using Error::Error;
};

/// A conservation, decay or positivity check failed during a run.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// solver
// ---------------------------------------------------------------------------

class SolverError : public Error {
public:
    using Error::Error;
};

class NoConvergence : public SolverError {
public:
    using SolverError::SolverError;
};

class LinearSolveFailure : public SolverError {
public:
    using SolverError::SolverError;
};

class SingularMatrix : public LinearSolveFailure {
public:
    using LinearSolveFailure::LinearSolveFailure;
};

class PositivityBacktrackExhausted : public SolverError {
public:
    using SolverError::SolverError;
};

} // namespace ddfv
