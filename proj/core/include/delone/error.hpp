#pragma once

#include <stdexcept>
#include <string>

namespace delone {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad region, inconsistent generator spec, wrong pattern kind.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// A region together with its required halo does not fit inside the patch window.
class WindowExceeded : public Error {
  public:
    WindowExceeded(const std::string& what, double required_halo = 0.0)
        : Error("window exceeded: " + what), required_halo_(required_halo) {}
    double required_halo() const { return required_halo_; }

  private:
    double required_halo_;
};

// A documented precondition (other than the window) does not hold.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// A checked invariant or certified inequality failed at runtime.
class InvariantViolation : public Error {
  public:
    using Error::Error;
};

}  // namespace delone
