#include "d4tuples/tuples.hpp"

#include <algorithm>
#include <cmath>

#include "d4tuples/errors.hpp"

namespace d4 {

namespace {

using u64 = unsigned long long;

// Exact square test for 64-bit values (long double has a 64-bit mantissa
// on x86, enough for v <= ~1.8e19).
bool is_square_u64(u64 v, u64* root) {
  u64 r = static_cast<u64>(sqrtl(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r == v) {
    if (root) *root = r;
    return true;
  }
  return false;
}

u64 isqrt_u64(u64 v) {
  u64 r = static_cast<u64>(sqrtl(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

Integer checked_witness(const Integer& x, const Integer& y, const char* what) {
  auto w = perfect_square_root(x * y + 4);
  if (!w)
    throw DomainError(std::string("not a D(4) pair (") + what + "): " +
                      x.get_str() + ", " + y.get_str());
  return *w;
}

}  // namespace

DTriple DTriple::make(const Integer& a, const Integer& b, const Integer& c) {
  if (sgn(a) <= 0 || !(a < b && b < c))
    throw DomainError("DTriple: need 0 < a < b < c");
  DTriple t;
  t.a = a;
  t.b = b;
  t.c = c;
  t.r_ab = checked_witness(a, b, "ab");
  t.r_ac = checked_witness(a, c, "ac");
  t.r_bc = checked_witness(b, c, "bc");
  return t;
}

DQuadruple DQuadruple::make(const std::vector<Integer>& xs) {
  if (xs.size() != 4) throw DomainError("DQuadruple: need exactly 4 elements");
  DQuadruple q;
  q.elements = xs;
  std::sort(q.elements.begin(), q.elements.end());
  for (std::size_t i = 0; i + 1 < 4; ++i)
    if (q.elements[i] == q.elements[i + 1])
      throw DomainError("DQuadruple: duplicate elements");
  if (sgn(q.elements[0]) <= 0)
    throw DomainError("DQuadruple: elements must be positive");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      q.witnesses.push_back(
          checked_witness(q.elements[i], q.elements[j], "quadruple pair"));
  return q;
}

std::optional<Integer> is_d4_pair(const Integer& a, const Integer& b) {
  if (sgn(a) <= 0 || sgn(b) <= 0)
    throw DomainError("is_d4_pair: elements must be positive");
  if (a == b) throw DomainError("is_d4_pair: elements must be distinct");
  return perfect_square_root(a * b + 4);
}

bool is_d4_tuple(const std::vector<Integer>& xs) {
  if (xs.size() < 2) throw DomainError("is_d4_tuple: need at least 2 elements");
  std::vector<Integer> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  if (sgn(sorted.front()) <= 0)
    throw DomainError("is_d4_tuple: elements must be positive");
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i] == sorted[i + 1])
      throw DomainError("is_d4_tuple: duplicate elements");
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      if (!is_perfect_square(sorted[i] * sorted[j] + 4)) return false;
  return true;
}

RegularExtension regular_extensions(const DTriple& t) {
  // sqrt((ab+4)(ac+4)(bc+4)) = r_ab r_ac r_bc, so everything stays integral.
  Integer root_product = t.r_ab * t.r_ac * t.r_bc;
  Integer abc = t.a * t.b * t.c;
  Integer plus_num = abc + root_product;
  Integer minus_num = abc - root_product;
  if (plus_num % 2 != 0 || minus_num % 2 != 0)
    throw DomainError("regular_extensions: parity broken (invalid triple)");
  RegularExtension ext;
  ext.triple = t;
  ext.d_plus = t.a + t.b + t.c + plus_num / 2;
  ext.d_minus = t.a + t.b + t.c + minus_num / 2;
  if (!regularity_relation_holds(t.a, ext.d_plus, t.b, t.c) ||
      !regularity_relation_holds(t.a, ext.d_minus, t.b, t.c))
    throw DomainError("regular_extensions: regularity relation failed");
  return ext;
}

bool regularity_relation_holds(const Integer& a, const Integer& d,
                               const Integer& b, const Integer& c) {
  Integer lhs = b + c - a - d;
  lhs *= lhs;
  Integer rhs = (a * d + 4) * (b * c + 4);
  return lhs == rhs;
}

std::vector<DTriple> enumerate_d4_triples(const Integer& limit) {
  if (limit < 3) throw DomainError("enumerate_d4_triples: limit must be >= 3");
  if (!limit.fits_ulong_p() || limit.get_ui() > 100000000ull)
    throw DomainError("enumerate_d4_triples: limit above desk scale (1e8)");
  const u64 lim = limit.get_ui();

  std::vector<DTriple> out;
  for (u64 a = 1; a + 2 <= lim; ++a) {
    // b > a with ab + 4 a square: walk the root r, b = (r^2 - 4) / a.
    const u64 rb_max = isqrt_u64(a * lim + 4);
    for (u64 rb = isqrt_u64(a * a + 4) + 1; rb <= rb_max; ++rb) {
      u64 t = rb * rb - 4;
      if (t % a != 0) continue;
      u64 b = t / a;
      if (b <= a || b > lim) continue;
      // c > b with ac + 4 and bc + 4 squares: walk the ac-root.
      for (u64 rc = isqrt_u64(a * b + 4) + 1; rc <= rb_max; ++rc) {
        u64 u = rc * rc - 4;
        if (u % a != 0) continue;
        u64 c = u / a;
        if (c <= b || c > lim) continue;
        if (!is_square_u64(b * c + 4, nullptr)) continue;
        out.push_back(DTriple::make(Integer(static_cast<unsigned long>(a)),
                                    Integer(static_cast<unsigned long>(b)),
                                    Integer(static_cast<unsigned long>(c))));
      }
    }
  }
  return out;
}

std::string to_line(const DTriple& t) {
  return t.a.get_str() + " " + t.b.get_str() + " " + t.c.get_str();
}

std::string to_line(const DQuadruple& q) {
  std::string line;
  for (std::size_t i = 0; i < q.elements.size(); ++i) {
    if (i) line += ' ';
    line += q.elements[i].get_str();
  }
  return line;
}

}  // namespace d4
