#pragma once

#include <stdexcept>
#include <string>

namespace tempconn {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad vertex ids, parse failures, wrong graph shape.
class InputError : public Error {
 public:
  using Error::Error;
};

// A line-positioned parse failure.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// No feasible solution exists for the instance.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// The instance exceeds a configured size cap (oracle cap, width cap, ...).
class RefusalError : public Error {
 public:
  using Error::Error;
};

// A caller-side precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tempconn
