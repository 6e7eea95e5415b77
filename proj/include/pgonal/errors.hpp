#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pgonal
{

struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Malformed text (signature or group spec strings).
struct ParseError : Error
{
  using Error::Error;
};

struct InvalidSignature : Error
{
  using Error::Error;
};

// Signature with non-positive normalized area.
struct DegenerateSignature : Error
{
  using Error::Error;
};

// Parameters outside an operation's preconditions (non-prime p, 4 not
// dividing n, l < 2, ...).
struct InvalidParameters : Error
{
  using Error::Error;
};

struct SpecMismatch : Error
{
  using Error::Error;
};

// The relations requested for a group do not define a group of the stated
// shape, e.g. an inverting extension of C_n x|_r C_p with r^2 != 1 (mod p).
struct InconsistentPresentation : Error
{
  using Error::Error;
};

// Brute-force routine called outside the size it is meant for.
struct OutOfScope : Error
{
  using Error::Error;
};

struct BudgetExceeded : Error
{
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
  : Error("search space of " + std::to_string(required) +
          " candidate tuples exceeds budget " + std::to_string(budget)),
    required(required),
    budget(budget)
  {}

  std::uint64_t required;
  std::uint64_t budget;
};

} // namespace pgonal
