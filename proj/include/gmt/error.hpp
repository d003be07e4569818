#pragma once

#include <stdexcept>
#include <string>

namespace gmt {

/// Raised for every contract violation detected by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& message)
{
    throw Error(message);
}

inline void require(bool condition, const char* message)
{
    if (!condition) fail(message);
}

inline void require(bool condition, const std::string& message)
{
    if (!condition) fail(message);
}

} // namespace gmt
