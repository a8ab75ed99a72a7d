#include "carnot/rational.hpp"

#include <cctype>

#include "carnot/error.hpp"

namespace carnot {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error(ErrorKind::Parse, "bad rational '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorKind::Parse, "bad rational '" + std::string(whole) + "'");
  }
  return mpz_class(std::string(digits));
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    mpz_class magnitude = parse_integer(exp_text, whole);
    if (magnitude > 4096) throw Error(ErrorKind::Parse, "exponent too large in '" + std::string(whole) + "'");
    exponent = magnitude.get_si();
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    digits = std::string(s.substr(0, dot)) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = std::string(s);
  }
  mpz_class mantissa = parse_integer(digits, whole);
  Rational out(mantissa);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    out *= ten_pow;
  } else {
    out /= ten_pow;
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(s.substr(0, slash), text);
    Rational den = parse_decimal(s.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> exact_root(const Rational& q, unsigned n) {
  if (q < 0) return std::nullopt;
  if (n == 1) return q;
  mpz_class num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), q.get_num_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), q.get_den_mpz_t(), n) == 0) return std::nullopt;
  return Rational(num_root, den_root);
}

Rational pow(const Rational& q, unsigned n) {
  Rational out(1);
  for (unsigned i = 0; i < n; ++i) out *= q;
  return out;
}

}  // namespace carnot
