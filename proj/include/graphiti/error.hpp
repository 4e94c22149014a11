#pragma once

#include <stdexcept>
#include <string>

namespace graphiti {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lexer/parser failure; carries a 1-based source position.
struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line(line), col(col) {}
    int line;
    int col;
};

/// Name-resolution or well-formedness failure detected before evaluation.
struct BindError : Error {
    using Error::Error;
};

/// Runtime evaluation failure (type mismatch, unbound key, division by zero).
struct EvalError : Error {
    using Error::Error;
};

}  // namespace graphiti
