// errors.hpp: exception hierarchy shared by all modules
#pragma once

#include <stdexcept>
#include <string>

namespace obist {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: nonpositive rates, malformed files, out-of-range arguments.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Singular systems, divergent integrations, pole proximity.
class NumericalError : public Error {
public:
    using Error::Error;
};

// A formula was asked for outside the only regime where it is defined.
class RegimeError : public Error {
public:
    using Error::Error;
};

}  // namespace obist
