#pragma once

#include <stdexcept>
#include <string>

namespace pseudoboson {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteError : Error { using Error::Error; };
struct DegreeCapExceededError : Error { using Error::Error; };
struct NotIntegrableError : Error { using Error::Error; };
struct InvalidParamsError : Error { using Error::Error; };
struct UnsupportedCouplingsError : Error { using Error::Error; };
struct TruncationTooLargeError : Error { using Error::Error; };
struct GridTooCoarseError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };
struct ConstraintNotSatisfiedError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace pseudoboson
