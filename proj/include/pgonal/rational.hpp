#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgonal
{

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
  return Rational(BigInt(num), BigInt(den));
}

inline bool is_integer(Rational const &q)
{
  return boost::multiprecision::denominator(q) == 1;
}

// The integer value of q, or nullopt when q is not integral or does not fit.
inline std::optional<std::int64_t> as_int64(Rational const &q)
{
  if (!is_integer(q))
    return std::nullopt;

  BigInt const num = boost::multiprecision::numerator(q);
  if (num > BigInt(INT64_MAX) || num < BigInt(INT64_MIN))
    return std::nullopt;

  return num.convert_to<std::int64_t>();
}

// "a/b" or "a" for integers.
inline std::string to_string(Rational const &q)
{
  if (is_integer(q))
    return boost::multiprecision::numerator(q).str();

  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

} // namespace pgonal
