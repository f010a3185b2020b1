#pragma once

#include <stdexcept>
#include <string>

namespace ballfun {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegreeRangeError : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};
struct InvalidMultiplierError : Error {
    using Error::Error;
};
struct InvertibilityError : Error {
    using Error::Error;
};
struct CapabilityError : Error {
    using Error::Error;
};
struct WeightError : Error {
    using Error::Error;
};
struct IdentityError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace ballfun
