#pragma once

#include <stdexcept>
#include <string>

namespace rfh {

// Malformed or inconsistent input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A structural invariant failed on otherwise well-formed input (for example
// a boundary that does not square to zero). Carries the offending generator.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, std::string generator)
      : std::runtime_error(what), generator_(std::move(generator)) {}
  const std::string& generator() const noexcept { return generator_; }

 private:
  std::string generator_;
};

}  // namespace rfh
