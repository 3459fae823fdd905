#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace napoly {

// Exit-code contract used by the CLI:
//   0 success, 2 parse, 3 infeasible, 4 oracle mismatch, 5 overflow, 1 other.
class Error : public std::runtime_error {
public:
    Error(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

class ParseError : public Error {
public:
    explicit ParseError(std::string msg) : Error(std::move(msg), 2) {}
};

class IoError : public Error {
public:
    explicit IoError(std::string msg) : Error(std::move(msg), 1) {}
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(std::string msg) : Error(std::move(msg), 1) {}
};

/// An operation that requires an epsilon-free automaton saw an EPSILON transition.
class EpsilonPresentError : public Error {
public:
    explicit EpsilonPresentError(std::string msg) : Error(std::move(msg), 1) {}
};

class EmptyAutomatonError : public Error {
public:
    explicit EmptyAutomatonError(std::string msg) : Error(std::move(msg), 1) {}
};

class EmptyPatternError : public Error {
public:
    explicit EmptyPatternError(std::string msg) : Error(std::move(msg), 1) {}
};

class SymbolOutsideAlphabetError : public Error {
public:
    explicit SymbolOutsideAlphabetError(std::string msg) : Error(std::move(msg), 1) {}
};

/// Enumeration guard exceeded (too many states or too long an input).
class TooLargeError : public Error {
public:
    explicit TooLargeError(std::string msg) : Error(std::move(msg), 1) {}
};

/// A score computation left the signed 32-bit range.
class ScoreOverflowError : public Error {
public:
    explicit ScoreOverflowError(std::string msg) : Error(std::move(msg), 5) {}
};

/// An epsilon cycle with strictly positive total weight makes best scores unbounded.
class UnboundedScoreError : public Error {
public:
    explicit UnboundedScoreError(std::string msg) : Error(std::move(msg), 5) {}
};

class TooManyNodesError : public Error {
public:
    explicit TooManyNodesError(std::string msg) : Error(std::move(msg), 3) {}
};

/// Placement failed: one line per unsatisfiable edge after budget exhaustion.
class InfeasibleError : public Error {
public:
    InfeasibleError(std::string msg, std::vector<std::string> violations)
        : Error(std::move(msg), 3), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

class IllegalPlacementError : public Error {
public:
    explicit IllegalPlacementError(std::string msg) : Error(std::move(msg), 1) {}
};

class OracleMismatchError : public Error {
public:
    explicit OracleMismatchError(std::string msg) : Error(std::move(msg), 4) {}
};

}  // namespace napoly
