// errors.hpp
// Error taxonomy shared by all qmask modules. Everything derives from Error
// so the CLI boundary can catch the whole family at once.

#pragma once

#include <stdexcept>

namespace qmask {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An index or state dimension does not match the expected one.
class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

// A precondition on an argument value was violated.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Malformed textual input (square files, coefficient lists, JSON dumps).
class FormatError : public Error {
public:
    using Error::Error;
};

// A combinatorial construction does not exist at the requested order.
class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

// A construction would exceed a configured size cap.
class ResourceCapError : public Error {
public:
    using Error::Error;
};

// An operation requires a certified-orthogonal Latin square pair.
class CertificationRequiredError : public Error {
public:
    using Error::Error;
};

} // namespace qmask
