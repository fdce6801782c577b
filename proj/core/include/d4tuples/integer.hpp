#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace d4 {

/// Exact arbitrary-size signed integer. Sweep values exceed 10^40 and
/// sequence terms reach thousands of digits, so fixed-width types are never
/// used for tuple arithmetic.
using Integer = mpz_class;

/// Exact rational; carries all real constants before they become enclosures.
using Rational = mpq_class;

/// floor(sqrt(n)). The result r satisfies r^2 <= n < (r+1)^2.
/// Throws DomainError for n < 0.
Integer isqrt(const Integer& n);

/// The exact root if n is a non-negative perfect square, empty otherwise.
/// Total function: never throws.
std::optional<Integer> perfect_square_root(const Integer& n);

bool is_perfect_square(const Integer& n);

/// Parses a decimal literal ("4.3e19", "0.0037", "-12") into an exact
/// rational. Throws DomainError on malformed input.
Rational rational_from_decimal(std::string_view text);

/// Same, but the value must be an integer (scientific notation allowed).
Integer integer_from_decimal(std::string_view text);

}  // namespace d4
