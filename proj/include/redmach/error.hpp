#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redmach {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands built over rings with different variable counts.
class arity_error : public error {
public:
    arity_error(std::size_t lhs, std::size_t rhs)
        : error("arity mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs) + " variables") {}
};

class divisibility_error : public error {
public:
    using error::error;
};

class overflow_error : public error {
public:
    using error::error;
};

/// Raised when a computation needs an admissible ordering and gets REVLEX.
class ordering_error : public error {
public:
    using error::error;
};

class zero_polynomial_error : public error {
public:
    using error::error;
};

class irreducible_error : public error {
public:
    using error::error;
};

class budget_exceeded : public error {
public:
    explicit budget_exceeded(std::size_t budget)
        : error("node budget of " + std::to_string(budget) + " exhausted"), budget_(budget) {}
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t budget_;
};

/// Syntax errors carry the 0-based column and, for file input, the 1-based line.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t column, std::size_t line = 0)
        : error(format(what, column, line)), message_(what), column_(column), line_(line) {}

    /// The description without position information.
    const std::string& message() const noexcept { return message_; }
    std::size_t column() const noexcept { return column_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& what, std::size_t column, std::size_t line) {
        std::string where = line ? "line " + std::to_string(line) + ", column " : "column ";
        return where + std::to_string(column) + ": " + what;
    }

    std::string message_;
    std::size_t column_;
    std::size_t line_;
};

}  // namespace redmach
