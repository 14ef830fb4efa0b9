#ifndef REDUP_ERRORS_HPP
#define REDUP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redup {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A token or name is not part of the declared segment inventory.
class InventoryError : public Error {
public:
    using Error::Error;
};

/// An operation was handed an automaton violating its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Wrong number of operands or macro arguments.
class ArityError : public Error {
public:
    using Error::Error;
};

/// Grammar source or dump text could not be parsed.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A well-formed expression could not be turned into an automaton.
class CompileError : public Error {
public:
    using Error::Error;
};

/// Enumeration produced more results than the configured cap.
class EnumerationLimit : public Error {
public:
    explicit EnumerationLimit(std::size_t cap)
        : Error("enumeration exceeded cap of " + std::to_string(cap) + " results"), cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

/// Lazy materialization expanded more descriptors than allowed.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(std::size_t expanded)
        : Error("expansion budget exceeded after " + std::to_string(expanded) + " descriptors"),
          expanded_(expanded) {}

    std::size_t expanded() const noexcept { return expanded_; }

private:
    std::size_t expanded_;
};

} // namespace redup

#endif // REDUP_ERRORS_HPP
