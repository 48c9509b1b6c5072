#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dirac_stab {

using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q" or an integer literal; rejects zero denominators and junk.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" for integers) rendering.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

/// 1/k! as an exact rational.
Rational inverse_factorial(unsigned k);

}  // namespace dirac_stab
