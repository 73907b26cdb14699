#pragma once

#include <stdexcept>
#include <string>

namespace utsp {

// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: non-square matrices, negative distances, bad files.
class format_error : public error {
 public:
  using error::error;
};

// Input that is well formed but violates an operation's precondition.
class invalid_input : public error {
 public:
  using error::error;
};

// An exact computation would exceed its configured budget.
class budget_error : public error {
 public:
  using error::error;
};

// A graph or gluing that does not produce a connected metric space.
class disconnected_error : public error {
 public:
  using error::error;
};

}  // namespace utsp
