#pragma once

#include <stdexcept>
#include <string>

namespace pirc {

// Caller violated a precondition (bad index, length mismatch, bad flag).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input file could not be parsed or does not describe a valid object.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checkpoint file is unreadable or belongs to another problem/version.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pirc
