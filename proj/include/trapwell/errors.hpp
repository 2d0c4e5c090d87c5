#pragma once

#include <stdexcept>
#include <string>

namespace trapwell {

// Argument outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Invalid user input (well parameters, options).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computation that could not produce a trustworthy number.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct overflow_error : numerical_error {
    using numerical_error::numerical_error;
};

}  // namespace trapwell
