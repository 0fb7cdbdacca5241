#pragma once

#include <stdexcept>
#include <string>

namespace subdyn {

//! Base for every error raised by the library. `code()` is a stable
//! identifier such as "ScaleTooSmall" that reports and tests key on.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

//! Malformed or inadmissible input (bad substitution file, empty image, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

//! A computation hit a caller-supplied bound (cap, radius, scale).
//! Re-running with a larger bound may succeed.
class ScaleError : public Error {
 public:
  using Error::Error;
};

}  // namespace subdyn
