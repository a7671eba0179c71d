#pragma once

#include <stdexcept>
#include <string>

namespace ekzft {

// Parameter outside its mathematical domain (window length, iterations,
// frequency, grid...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Problem with the data being processed: unreadable or malformed input,
// series too short for the requested filter, missing values where a
// complete series is required.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ekzft
