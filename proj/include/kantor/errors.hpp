#pragma once

// Error types thrown by the library. The CLI maps each type to a distinct
// exit code, so keep the taxonomy small and stable:
//   ParseError      -> 2   malformed input text
//   ValidationError -> 3   structurally valid input violating a precondition
//   CapacityError   -> 4   an enumeration or size guard was exceeded
//   ConditionError  -> 5   a mathematical applicability condition failed

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kantor {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    std::size_t line;  // 1-based input line, 0 when unknown

    explicit ParseError(const std::string& msg, std::size_t line_no = 0)
        : Error(line_no ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

struct ValidationError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    unsigned long long reached;  // count at which the guard tripped

    CapacityError(const std::string& msg, unsigned long long reached_count)
        : Error(msg), reached(reached_count) {}
};

struct ConditionError : Error {
    using Error::Error;
};

}  // namespace kantor
