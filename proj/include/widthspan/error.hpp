#pragma once

#include <stdexcept>
#include <string>

namespace widthspan {

/// Malformed input text. `line()` is 1-based, or 0 when no line applies.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(format(line, message)), line_(line) {}

    int line() const noexcept { return line_; }

private:
    static std::string format(int line, const std::string& message) {
        if (line <= 0) {
            return message;
        }
        return "line " + std::to_string(line) + ": " + message;
    }

    int line_;
};

/// Well-formed input that violates a structural requirement (simple graph,
/// connectivity, decomposition properties, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Broken internal invariant. Seeing one of these means a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace widthspan
