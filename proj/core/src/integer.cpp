#include "d4tuples/integer.hpp"

#include <cctype>
#include <cstdlib>

#include "d4tuples/errors.hpp"

namespace d4 {

Integer isqrt(const Integer& n) {
  if (sgn(n) < 0) throw DomainError("isqrt: negative input");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Integer> perfect_square_root(const Integer& n) {
  if (sgn(n) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Rational rational_from_decimal(std::string_view text) {
  std::size_t pos = 0;
  const std::size_t len = text.size();
  auto fail = [&]() -> Rational {
    throw DomainError("rational_from_decimal: malformed literal '" +
                      std::string(text) + "'");
  };

  bool negative = false;
  if (pos < len && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }

  std::string digits;
  long frac_len = 0;
  bool any_digit = false;
  while (pos < len && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits.push_back(text[pos++]);
    any_digit = true;
  }
  if (pos < len && text[pos] == '.') {
    ++pos;
    while (pos < len && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits.push_back(text[pos++]);
      ++frac_len;
      any_digit = true;
    }
  }
  if (!any_digit) return fail();

  long exponent = 0;
  if (pos < len && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < len && (text[pos] == '+' || text[pos] == '-')) {
      exp_neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= len) return fail();
    long value = 0;
    while (pos < len && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos++] - '0');
      if (value > 1000000) return fail();
    }
    exponent = exp_neg ? -value : value;
  }
  if (pos != len) return fail();

  Integer numerator;
  if (mpz_set_str(numerator.get_mpz_t(), digits.c_str(), 10) != 0)
    return fail();
  if (negative) numerator = -numerator;
  Integer denominator(1);

  long shift = exponent - frac_len;
  Integer ten_pow;
  if (shift >= 0) {
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    numerator *= ten_pow;
  } else {
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
    denominator = ten_pow;
  }

  Rational result(numerator, denominator);
  result.canonicalize();
  return result;
}

Integer integer_from_decimal(std::string_view text) {
  Rational q = rational_from_decimal(text);
  if (q.get_den() != 1)
    throw DomainError("integer_from_decimal: value is not an integer: " +
                      std::string(text));
  return q.get_num();
}

}  // namespace d4
