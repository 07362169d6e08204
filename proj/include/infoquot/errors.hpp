#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace infoquot {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed caller input: unknown symbols, length mismatches, violated
// operation preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

// A construction exceeded its configured state budget.
class ResourceLimitError : public Error {
public:
    ResourceLimitError(const std::string& what, std::size_t cap)
        : Error(what), cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_ = 0;
};

// A violated internal invariant. Signals a bug or an input that silently
// broke a documented precondition (e.g. a non-minimal automaton passed to
// the state classification).
class InternalError : public Error {
public:
    using Error::Error;
};

// Default budget for subset constructions and closures.
inline constexpr std::size_t kDefaultMaxStates = 1'000'000;

}  // namespace infoquot
