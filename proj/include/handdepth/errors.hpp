#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace handdepth {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value lies outside the valid calibration domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input bytes. Carries the byte offset where decoding stopped.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class NotFound : public Error {
public:
    using Error::Error;
};

/// Morphological opening removed every pixel.
class EmptyResult : public Error {
public:
    using Error::Error;
};

/// Hand mask too thin to have a meaningful palm.
class DegenerateHand : public Error {
public:
    using Error::Error;
};

/// Every pixel of a finger mask carries the no-measurement sentinel.
class NoValidDepth : public Error {
public:
    using Error::Error;
};

/// Synthetic geometry leaves the frame or overlaps another hand.
class GeometryError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace handdepth
