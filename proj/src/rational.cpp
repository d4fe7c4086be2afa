#include "tensorres/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tensorres {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt ten_to(long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  std::string_view s = text;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_part = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational value{BigInt(digits, 10)};
  if (exponent > 0) value *= ten_to(exponent);
  if (exponent < 0) value /= ten_to(-exponent);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    BigInt d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    BigInt n(std::string(num_digits), 10);
    if (num.front() == '-') n = -n;
    Rational r(n, d);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value) { return value.get_str(10); }

BigInt double_factorial(long n) {
  BigInt r = 1;
  for (long i = n; i > 1; i -= 2) r *= i;
  return r;
}

BigInt factorial(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r(1);
  Rational b = base;
  while (exponent) {
    if (exponent & 1u) r *= b;
    b *= b;
    exponent >>= 1u;
  }
  return r;
}

int sign(const Rational& value) { return sgn(value); }

}  // namespace tensorres
