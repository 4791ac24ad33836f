#pragma once

#include <stdexcept>
#include <string>

namespace cwf {

// Malformed input or violated precondition; maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computed check did not hold (verification mismatch); maps to exit code 1.
class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cwf
