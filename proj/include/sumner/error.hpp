#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sumner {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument is outside an operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Size caps (exact modes, enumeration limits) were exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Text format violation, with 1-based line/column of the offending input.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised by is_valid_embedding when the map is not total.
class PartialEmbedding : public Error {
public:
    using Error::Error;
};

/// Pinned tree vertices contradict each other or the host.
class InfeasiblePinning : public Error {
public:
    using Error::Error;
};

/// A lemma-style procedure was handed an instance whose hypotheses fail.
/// `hypothesis()` names the violated condition.
class HypothesisViolation : public Error {
public:
    HypothesisViolation(std::string hypothesis, const std::string& detail)
        : Error("hypothesis '" + hypothesis + "' violated: " + detail),
          hypothesis_(std::move(hypothesis)) {}

    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// An inner embedding step failed even after the exhaustive fallback. When the
/// enclosing hypotheses validated this is a defect.
class InnerEmbeddingFailure : public Error {
public:
    using Error::Error;
};

/// A produced object failed its post-hoc audit.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

} // namespace sumner
