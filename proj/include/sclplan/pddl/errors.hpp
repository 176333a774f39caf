#pragma once

#include <stdexcept>
#include <string>

namespace sclplan::pddl {

// Syntax-level failure. line/col are 1-based positions into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int col)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": " + message),
          line_(line), col_(col), message_(std::move(message)) {}

    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int col_;
    std::string message_;
};

// Well-formed syntax with a meaning problem: undeclared type or predicate,
// arity mismatch, unbound variable, duplicate declaration.
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(std::string message)
        : std::runtime_error(message), message_(std::move(message)) {}

    const std::string& message() const { return message_; }

private:
    std::string message_;
};

// Failure to extract or check a goal condition from free-form text.
class GoalParseError : public std::runtime_error {
public:
    explicit GoalParseError(std::string message)
        : std::runtime_error(message), message_(std::move(message)) {}

    const std::string& message() const { return message_; }

private:
    std::string message_;
};

// Internal inconsistency during grounding. Should be unreachable for inputs
// that passed the parser's semantic checks.
class GroundingError : public std::runtime_error {
public:
    explicit GroundingError(std::string message)
        : std::runtime_error(message) {}
};

}  // namespace sclplan::pddl
