#pragma once

#include <stdexcept>
#include <string>

namespace periodica {

// Malformed user input: files, flag values, unknown names, violated
// preconditions. The CLI maps this to exit code 1. Internal invariant
// failures use std::logic_error and map to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace periodica
