#include "d4tuples/pell.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "d4tuples/errors.hpp"

namespace d4 {

PairContext PairContext::make(const Integer& a, const Integer& b, int epsilon) {
  if (epsilon != 1 && epsilon != -1)
    throw DomainError("PairContext: epsilon must be +1 or -1");
  if (sgn(a) <= 0 || sgn(b) <= 0)
    throw DomainError("PairContext: a, b must be positive");
  auto s = perfect_square_root(a * b + 4);
  if (!s) throw DomainError("PairContext: ab + 4 is not a square");
  auto t = perfect_square_root((a + 1) * b + 4);
  if (!t) throw DomainError("PairContext: (a+1)b + 4 is not a square");
  PairContext ctx;
  ctx.a = a;
  ctx.b = b;
  ctx.s = *s;
  ctx.t = *t;
  ctx.epsilon = epsilon;
  // a t^2 - (a+1) s^2 = -4 is automatic; keep it as a consistency check.
  if (a * ctx.t * ctx.t - (a + 1) * ctx.s * ctx.s != -4)
    throw DomainError("PairContext: Pell identity failed");
  return ctx;
}

RecurrenceSequence::RecurrenceSequence(Integer u0, Integer u1, Integer coef)
    : coef_(std::move(coef)) {
  // window (u_{k-1}, u_k) at k = 0, using the virtual u_{-1} = coef*u0 - u1
  previous_ = coef_ * u0 - u1;
  current_ = std::move(u0);
  index_ = 0;
}

void RecurrenceSequence::advance() {
  // (previous_, current_) := (current_, coef*current_ - previous_)
  Integer next = coef_ * current_ - previous_;
  previous_ = std::move(current_);
  current_ = std::move(next);
  ++index_;
}

Integer RecurrenceSequence::at(std::size_t k) const {
  RecurrenceSequence walk = *this;
  while (walk.index() < k) walk.advance();
  return walk.value();
}

RecurrenceSequence SequencePair::v() const {
  Integer v0 = 2 * context.epsilon;
  Integer v1 = context.epsilon * context.s + context.b;
  return RecurrenceSequence(v0, v1, context.s);
}

RecurrenceSequence SequencePair::w() const {
  Integer w0 = 2 * context.epsilon;
  Integer w1 = context.epsilon * context.t + context.b;
  return RecurrenceSequence(w0, w1, context.t);
}

SequencePair sequence_pair(const Integer& a, const Integer& b, int epsilon) {
  return SequencePair{PairContext::make(a, b, epsilon)};
}

std::vector<Integer> s_sequence(const Integer& a, std::size_t count) {
  if (sgn(a) <= 0) throw DomainError("s_sequence: a must be >= 1");
  std::vector<Integer> out;
  out.reserve(count);
  Integer coef = 2 * (2 * a + 1);
  RecurrenceSequence seq(Integer(2), 8 * a + 2, coef);
  for (std::size_t i = 0; i < count; ++i) {
    const Integer& s = seq.value();
    // companion t from a t^2 = (a+1) s^2 - 4
    Integer t2_num = (a + 1) * s * s - 4;
    if (t2_num % a != 0 || !is_perfect_square(t2_num / a))
      throw DomainError("s_sequence: companion t check failed");
    out.push_back(s);
    seq.advance();
  }
  return out;
}

Integer b_nu(const Integer& a, unsigned nu) {
  if (sgn(a) <= 0) throw DomainError("b_nu: a must be >= 1");
  if (nu == 0) throw DomainError("b_nu: nu must be >= 1");
  Integer coef = 2 * (2 * a + 1);
  RecurrenceSequence seq(Integer(2), 8 * a + 2, coef);
  while (seq.index() < nu) seq.advance();
  Integer num = seq.value() * seq.value() - 4;
  if (num % a != 0) throw DomainError("b_nu: divisibility failed");
  return num / a;
}

std::vector<FundamentalSolution> fundamental_solutions(const Integer& a,
                                                       const Integer& b,
                                                       PellEquation eq) {
  if (sgn(a) <= 0 || sgn(b) <= 0)
    throw DomainError("fundamental_solutions: a, b must be positive");
  // Only the witness of the requested equation is needed: the first
  // equation asks for {a, b}, the second for {a+1, b}.
  const Integer A = eq == PellEquation::first ? a : a + 1;
  auto root = perfect_square_root(A * b + 4);
  if (!root)
    throw DomainError("fundamental_solutions: " + A.get_str() + "*b + 4 must "
                      "be a square");
  const Integer S = *root;
  if (b <= A)
    throw DomainError("fundamental_solutions: range bounds need b > " +
                      A.get_str());

  // 1 <= x0, x0^2 (S-2) < A (b-A);  1 <= |z0|, z0^2 A < (S-2)(b-A)
  const Integer x_cap = A * (b - A);   // against x0^2 (S-2)
  const Integer z_cap = (S - 2) * (b - A);  // against z0^2 A
  std::vector<FundamentalSolution> out;
  for (Integer x0 = 1; x0 * x0 * (S - 2) < x_cap; ++x0) {
    // A z^2 = b x0^2 + 4(A - b)
    Integer num = b * x0 * x0 + 4 * (A - b);
    if (sgn(num) < 0 || num % A != 0) continue;
    auto z = perfect_square_root(num / A);
    if (!z || sgn(*z) == 0) continue;
    if (*z * *z * A >= z_cap) continue;
    FundamentalSolution pos{*z, x0, eq};
    FundamentalSolution negt{-*z, x0, eq};
    out.push_back(negt);
    out.push_back(pos);
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return std::tie(l.x0, l.z0) < std::tie(r.x0, r.z0);
  });
  return out;
}

Integer congruence_class_mod_b2(const PairContext& ctx, SequenceKind kind,
                                std::size_t index) {
  const Integer& b = ctx.b;
  const Integer b2 = b * b;
  const Integer eps(ctx.epsilon);
  const Integer coef = kind == SequenceKind::v ? ctx.s : ctx.t;
  const Integer lead = kind == SequenceKind::v ? ctx.a : ctx.a + 1;

  Integer k(static_cast<unsigned long>(index / 2));
  Integer value;
  if (index % 2 == 0) {
    value = 2 * eps + b * (lead * eps * k * k + coef * k);
  } else {
    // lead * coef * eps * k(k+1)/2 is integral (k(k+1) even)
    Integer half = k * (k + 1) / 2;
    value = eps * coef + b * (lead * coef * eps * half + (2 * k + 1));
  }
  Integer residue;
  mpz_fdiv_r(residue.get_mpz_t(), value.get_mpz_t(), b2.get_mpz_t());
  return residue;
}

Integer closed_form_v(const PairContext& ctx, std::size_t m,
                      mpfr_prec_t precision_cap) {
  // v_m = ((e sqrt(a) + sqrt(b)) / sqrt(a)) alpha^m
  //     + ((e sqrt(a) - sqrt(b)) / sqrt(a)) alpha'^m,
  // alpha = (s + sqrt(ab))/2, alpha' = (s - sqrt(ab))/2.
  const std::size_t s_bits = mpz_sizeinbase(ctx.s.get_mpz_t(), 2);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(
      kDefaultPrecision, static_cast<mpfr_prec_t>(m * (s_bits + 1) + 64));
  for (;; prec *= 2) {
    CertifiedReal sqrt_a = CertifiedReal::exact(ctx.a, prec).sqrt();
    CertifiedReal sqrt_b = CertifiedReal::exact(ctx.b, prec).sqrt();
    CertifiedReal sqrt_ab = CertifiedReal::exact(ctx.a * ctx.b, prec).sqrt();
    CertifiedReal s_val = CertifiedReal::exact(ctx.s, prec);
    CertifiedReal half = CertifiedReal::from_rational(Rational(1, 2), prec);
    CertifiedReal eps = CertifiedReal::exact(long(ctx.epsilon), prec);

    CertifiedReal alpha = (s_val + sqrt_ab) * half;
    CertifiedReal alpha_bar = (s_val - sqrt_ab) * half;
    CertifiedReal ratio = sqrt_b / sqrt_a;
    CertifiedReal value = (eps + ratio) * alpha.pow(m) +
                          (eps - ratio) * alpha_bar.pow(m);
    if (auto unique = value.unique_integer()) return *unique;
    if (prec >= precision_cap)
      throw PrecisionError("closed_form_v: enclosure too wide at cap");
  }
}

namespace {

// 0.4672 (a+1)^{-1/2} b^{1/2}, evaluated directly (callers gate hypotheses).
CertifiedReal index_floor_expression(const Integer& a, const Integer& b,
                                     mpfr_prec_t prec) {
  CertifiedReal c = CertifiedReal::from_decimal("0.4672", prec);
  CertifiedReal root_b = CertifiedReal::exact(b, prec).sqrt();
  CertifiedReal root_a1 = CertifiedReal::exact(a + 1, prec).sqrt();
  return c * root_b / root_a1;
}

}  // namespace

std::vector<IntersectionHit> find_intersections(const Integer& a,
                                                const Integer& b,
                                                std::size_t m_max) {
  if (a >= b)
    throw DomainError(
        "find_intersections: needs a < b (monotone merge requirement)");
  if (m_max < 2)
    return {};
  std::vector<IntersectionHit> hits;
  CertifiedReal floor_expr = index_floor_expression(a, b, kDefaultPrecision);

  for (int epsilon : {+1, -1}) {
    SequencePair pair = sequence_pair(a, b, epsilon);
    RecurrenceSequence v = pair.v();
    RecurrenceSequence w = pair.w();
    // Both sequences are strictly increasing from index 0 (b > a ensures
    // v1 > v0); merge, skipping the shared starting value 2e.
    v.advance();
    w.advance();
    while (v.index() <= m_max) {
      int cmp = ::cmp(v.value(), w.value());
      if (cmp < 0) {
        v.advance();
      } else if (cmp > 0) {
        w.advance();
      } else {
        const std::size_t m = v.index(), n = w.index();
        if (m >= 2) {
          IntersectionHit hit;
          hit.m = m;
          hit.n = n;
          hit.z = v.value();
          hit.epsilon = epsilon;
          Integer c_num = hit.z * hit.z - 4;
          if (c_num % b != 0)
            throw DomainError("find_intersections: z^2 != 4 mod b");
          hit.derived_c = c_num / b;
          hit.both_even = (m % 2 == 0) && (n % 2 == 0);
          hit.index_window_ok = (n <= m) && (2 * m <= 3 * n + 2);
          hit.m_greater_n = m > n;
          auto above = CertifiedReal::exact(long(m)).certified_less(floor_expr);
          hit.above_index_floor = above.has_value() && !*above;
          hit.index_floor = floor_expr.midpoint_double();
          hits.push_back(std::move(hit));
        }
        v.advance();
        w.advance();
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& l, const auto& r) {
    return std::tie(l.epsilon, l.m, l.n) < std::tie(r.epsilon, r.m, r.n);
  });
  return hits;
}

std::string to_json(const IntersectionHit& hit, const Integer& a,
                    const Integer& b) {
  std::ostringstream os;
  os << "{\"a\": " << a.get_str() << ", \"b\": " << b.get_str()
     << ", \"epsilon\": " << hit.epsilon << ", \"m\": " << hit.m
     << ", \"n\": " << hit.n << ", \"z\": \"" << hit.z.get_str()
     << "\", \"derived_c\": \"" << hit.derived_c.get_str() << "\"}";
  return os.str();
}

}  // namespace d4
