#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace depthstab {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class ValidationError : public Error {
  public:
    using Error::Error;
};

class ArgumentError : public Error {
  public:
    using Error::Error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

// Raised when a configurable size cap is exceeded. The message names the cap.
class ResourceError : public Error {
  public:
    ResourceError(const std::string &cap, std::size_t limit)
        : Error("resource cap '" + cap + "' exceeded (limit " + std::to_string(limit) + ")"),
          cap_(cap), limit_(limit) {}
    const std::string &cap() const noexcept { return cap_; }
    std::size_t limit() const noexcept { return limit_; }

  private:
    std::string cap_;
    std::size_t limit_;
};

} // namespace depthstab
