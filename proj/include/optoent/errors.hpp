#ifndef OPTOENT_ERRORS_HPP
#define OPTOENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace optoent
{

// Base for everything the library throws on purpose.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A physical input is out of its admissible range or produced a non-finite value.
class InvalidParameter : public Error
{
public:
    using Error::Error;
};

// Malformed config file: unknown key, missing unit, bad number, missing key.
class ConfigError : public Error
{
public:
    using Error::Error;
};

// Root-finding or bracketing failed.
class ConvergenceError : public Error
{
public:
    ConvergenceError(const std::string& what, double lo, double hi)
        : Error(what + " (bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "])"),
          lo_(lo), hi_(hi)
    {
    }

    double bracket_lo() const noexcept { return lo_; }
    double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

// Linear system too close to singular to solve meaningfully.
class SingularSystem : public Error
{
public:
    using Error::Error;
};

} // namespace optoent

#endif
