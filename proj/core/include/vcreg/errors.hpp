#pragma once

#include <stdexcept>
#include <string>

namespace vcreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A density or normalized measure was requested over an empty side.
class EmptySideError : public Error {
public:
    using Error::Error;
};

/// Shattering enumeration requested on a set larger than the guard.
class TooLargeToShatterCheck : public Error {
public:
    using Error::Error;
};

/// Formula evaluated outside its domain (e.g. Sauer-Shelah with |I| < d).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two objects disagree about the ground sets they live on.
class GroundMismatchError : public Error {
public:
    using Error::Error;
};

/// Exhaustive regularity test requested on a block pair beyond its size cap.
class TooLargeForExact : public Error {
public:
    using Error::Error;
};

/// The witness amplification produced an empty intermediate set.
class DegenerateWitness : public Error {
public:
    using Error::Error;
};

/// Invalid generator parameters.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A structural invariant (partition, subset) was violated by the caller.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace vcreg
