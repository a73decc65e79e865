#pragma once

#include <stdexcept>
#include <string>

namespace ghm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation's contract (size mismatch, bad labels, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// An explicit resource cap (work budget, exhaustive-search size) would be exceeded.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string & what, double estimated_cost, double cap)
        : Error(what + " (estimated cost " + format_number(estimated_cost) + ", cap "
                + format_number(cap) + ")"),
          estimated_cost_(estimated_cost), cap_(cap) {}

    double estimated_cost() const noexcept { return estimated_cost_; }
    double cap() const noexcept { return cap_; }

private:
    static std::string format_number(double v);

    double estimated_cost_;
    double cap_;
};

/// Malformed file content. The message names the offending field.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A dataset mixes graphs of different vertex counts.
class MixedSizeError : public ContractError {
public:
    using ContractError::ContractError;
};

}  // namespace ghm
