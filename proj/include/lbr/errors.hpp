#ifndef LBR_ERRORS_HPP
#define LBR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lbr {

/// Vector lengths disagree with the item count of the instance.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The feasible set is empty (disconnected graph, quota larger than part, ...).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration-based routine was asked to handle more than it supports.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called with a problem variant it does not handle.
class VariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data violates a documented precondition (non-integer budgets, too few samples, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file. `line()` is 1-based, 0 when not line oriented.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace lbr

#endif // LBR_ERRORS_HPP
