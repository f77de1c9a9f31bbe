#pragma once

#include <stdexcept>
#include <string>

namespace motm {

/// Input outside the mathematical domain of an operation (non-finite values,
/// non-positive volatility, arguments outside a transform's strip).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Value outside no-arbitrage or representable bounds.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// A numerical routine failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An asymptotic formula was requested outside the parameter regime in which it holds.
class RegimeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An expansion needs an energy derivative that is not available.
class UnsupportedOrderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace motm
