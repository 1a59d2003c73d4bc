#pragma once

#include <stdexcept>
#include <string>

namespace amice {

// Base of every failure raised by the library. The CLI maps each subclass
// onto a distinct exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (bad prime, index out of range, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A p-adic result would be known modulo p^0 or less.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

// A bounded search ran out of candidates.
class SearchExhausted : public Error {
public:
    using Error::Error;
};

// A numerical comparison failed its tolerance.
class ToleranceNotMet : public Error {
public:
    using Error::Error;
};

}  // namespace amice
