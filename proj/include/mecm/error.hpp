#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mecm
{

// Base for every error raised by the library. The CLI maps ConfigError
// (and its subclasses) to exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error
{
  public:
    using Error::Error;
};

// Series has the wrong number of records.
class LengthError : public ConfigError
{
  public:
    LengthError(std::string const& what, std::size_t actual, std::size_t expected)
        : ConfigError(what), actual_(actual), expected_(expected)
    {
    }

    std::size_t actual() const { return actual_; }
    std::size_t expected() const { return expected_; }

  private:
    std::size_t actual_;
    std::size_t expected_;
};

// Negative, NaN or infinite value; row is 1-based.
class ValueError : public ConfigError
{
  public:
    ValueError(std::string const& what, std::size_t row)
        : ConfigError(what), row_(row)
    {
    }

    std::size_t row() const { return row_; }

  private:
    std::size_t row_;
};

// A storage request would leave its permissible range. maxFeasible is the
// largest power (same direction as the request) the store can accept.
class BoundsError : public Error
{
  public:
    BoundsError(std::string const& what, double maxFeasible)
        : Error(what), maxFeasible_(maxFeasible)
    {
    }

    double maxFeasible() const { return maxFeasible_; }

  private:
    double maxFeasible_;
};

class IrrUndefined : public Error
{
  public:
    using Error::Error;
};

} // namespace mecm
