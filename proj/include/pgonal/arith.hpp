#pragma once

#include <cstdint>
#include <numeric>

namespace pgonal
{

constexpr bool is_prime(std::int64_t n)
{
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0)
      return false;
  }
  return true;
}

constexpr bool is_odd_prime(std::int64_t n)
{ return n > 2 && is_prime(n); }

// Least non-negative residue.
constexpr std::int64_t mod(std::int64_t a, std::int64_t m)
{
  std::int64_t const r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m)
{
  if (m == 1)
    return 0;

  std::int64_t result = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1)
      result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

} // namespace pgonal
