#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace permseq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (e.g. log of a non-positive number).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Constructor or operation parameters violate a stated constraint.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Working precision too low to decide a result; retry with more bits.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// A rule set or element list that should be consistent is not.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// A configured ceiling (lcm, sieve size, scan range) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class NoCrossingError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace permseq
