#pragma once

#include <stdexcept>
#include <string>

namespace superp1 {

// Violated mathematical precondition (chart mismatch, bad grading, invalid
// automorphism, ...).  The CLI maps these to exit code 2.
class PreconditionError : public std::domain_error {
public:
    explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

// Syntax error in a field expression, Laurent string or automorphism file.
// The CLI maps these to exit code 1.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}

    std::size_t pos;
};

}  // namespace superp1
