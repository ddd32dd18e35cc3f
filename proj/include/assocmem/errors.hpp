#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace assocmem {

// Bad dimensions, out-of-range parameters, malformed files.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Gram-Schmidt hit a vector with (numerically) no component outside the
// span of its predecessors.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(std::size_t index)
        : std::runtime_error("linearly dependent input at pattern index " + std::to_string(index)),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// Probe is orthogonal to every stored pattern; there is nothing to recall.
class NoRecallError : public std::runtime_error {
public:
    NoRecallError() : std::runtime_error("no-recall: probe is orthogonal to the stored memory") {}
};

} // namespace assocmem
