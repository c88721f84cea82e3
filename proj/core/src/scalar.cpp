#include "zplie/scalar.hpp"

#include <algorithm>
#include <cctype>

namespace zplie {

namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool valid_unsigned(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer(num) || (slash != std::string_view::npos && !valid_unsigned(den))) {
    throw ParseError("malformed rational: \"" + std::string(text) + "\"");
  }
  std::string n(num.front() == '+' ? num.substr(1) : num);
  mpz_class p(n, 10);
  mpz_class q = 1;
  if (slash != std::string_view::npos) {
    q = mpz_class(std::string(den), 10);
    if (q == 0) throw ParseError("zero denominator: \"" + std::string(text) + "\"");
  }
  Scalar r(p, q);
  r.canonicalize();
  return r;
}

std::string format_scalar(const Scalar& raw) {
  Scalar value = raw;
  value.canonicalize();
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

}  // namespace zplie
