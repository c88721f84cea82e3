#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zplie {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator) after each arithmetic operation.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q", "p" or "-p/q". Whitespace is not accepted; q must be nonzero.
Scalar parse_scalar(std::string_view text);

/// Canonical text form: "p/q", or "p" when q == 1.
std::string format_scalar(const Scalar& value);

Vector zero_vector(std::size_t n);
bool is_zero(const Vector& v);

}  // namespace zplie
