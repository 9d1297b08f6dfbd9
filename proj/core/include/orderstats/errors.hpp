#pragma once

#include <stdexcept>
#include <string>

namespace orderstats {

/// A distribution or model parameter is outside its admissible range.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data (samples, indices, grids) violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the mathematical domain, e.g. a probability not in (0,1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The inputs are valid but numerically degenerate for the requested check
/// (zero quantiles in a ratio, non-invertible conditional law, infinite hazard).
class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact construction would exceed its size budget.
class ExactLawTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace orderstats
