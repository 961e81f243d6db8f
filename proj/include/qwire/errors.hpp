#pragma once

#include <stdexcept>
#include <string>

namespace qwire {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument (negative wavenumber, empty range, malformed config, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Requested channel is not propagating at the given energy.
class ChannelClosed : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// Tr(gamma gamma^dagger) vanishes: there is no coincidence component to normalise.
class NoPostSelectedState : public Error {
public:
    using Error::Error;
};

class NotConverged : public Error {
public:
    using Error::Error;
};

} // namespace qwire
