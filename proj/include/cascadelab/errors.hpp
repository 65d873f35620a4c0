#pragma once

#include <stdexcept>

namespace cascadelab {

// Invalid parameters or violated operation preconditions. CLI maps this to exit code 2.
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical blow-up, loss of finiteness, or a step that would drive a state
// out of its admissible set. CLI maps this to exit code 3.
class instability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File-system and parse failures. CLI maps this to exit code 1.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cascadelab
