#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d4tuples/integer.hpp"

namespace d4 {

/// A validated D(4)-triple a < b < c carrying its square-root witnesses.
struct DTriple {
  Integer a, b, c;
  Integer r_ab, r_ac, r_bc;  // r_xy^2 = xy + 4

  /// Validates ordering, positivity and the three witnesses.
  /// Throws DomainError otherwise.
  static DTriple make(const Integer& a, const Integer& b, const Integer& c);
};

/// A validated D(4)-quadruple (ascending) with its six witnesses.
struct DQuadruple {
  std::vector<Integer> elements;   // size 4, strictly increasing
  std::vector<Integer> witnesses;  // six roots, pair order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)

  static DQuadruple make(const std::vector<Integer>& xs);
};

/// The two regular extensions of a triple. d_minus may be 0 (the degenerate
/// down-extension); otherwise d_minus < c < d_plus and both satisfy the
/// regularity relation against the triple.
struct RegularExtension {
  Integer d_plus;
  Integer d_minus;
  DTriple triple;
};

/// ab + 4 perfect-square test with witness. Throws DomainError for
/// non-positive or equal inputs.
std::optional<Integer> is_d4_pair(const Integer& a, const Integer& b);

/// Every pair passes is_d4_pair. Throws DomainError on duplicates or
/// non-positive entries.
bool is_d4_tuple(const std::vector<Integer>& xs);

/// d+- = a+b+c + (abc +- r_ab r_ac r_bc)/2, computed in exact integers.
RegularExtension regular_extensions(const DTriple& t);

/// Exact integer identity (b + c - a - d)^2 == (ad + 4)(bc + 4).
bool regularity_relation_holds(const Integer& a, const Integer& d,
                               const Integer& b, const Integer& c);

/// Every D(4)-triple with c <= limit, exactly once, lexicographic order.
/// Desk-scale enumerator; limit must fit comfortably in 64 bits (<= 10^8).
std::vector<DTriple> enumerate_d4_triples(const Integer& limit);

/// Line-oriented text format: space-separated ascending integers.
std::string to_line(const DTriple& t);
std::string to_line(const DQuadruple& q);

}  // namespace d4
