#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "d4tuples/integer.hpp"
#include "d4tuples/real.hpp"

namespace d4 {

/// Everything a pair (a, b) computation needs: the witnesses s, t of
/// ab + 4 = s^2 and (a+1)b + 4 = t^2, and the sign epsilon of the fixed
/// fundamental solutions z0 = z1 = 2*epsilon. The witnesses automatically
/// satisfy a t^2 - (a+1) s^2 = -4.
struct PairContext {
  Integer a, b, s, t;
  int epsilon = 1;

  /// Throws DomainError when a witness root is missing or epsilon is not +-1.
  static PairContext make(const Integer& a, const Integer& b, int epsilon);
};

/// u_{k+2} = coef * u_{k+1} - u_k with a sliding two-term window; terms grow
/// exponentially, so nothing beyond the window is retained.
class RecurrenceSequence {
 public:
  RecurrenceSequence(Integer u0, Integer u1, Integer coef);

  const Integer& value() const { return current_; }
  std::size_t index() const { return index_; }
  void advance();
  /// Fresh O(k) walk to index k.
  Integer at(std::size_t k) const;

 private:
  Integer previous_, current_, coef_;
  std::size_t index_ = 0;
};

/// The two sequences (v_m), (w_n) for a fixed (a, b, epsilon):
/// v0 = 2e, v1 = e s + b, v_{m+2} = s v_{m+1} - v_m (w with t).
struct SequencePair {
  PairContext context;
  RecurrenceSequence v() const;
  RecurrenceSequence w() const;
  Integer v_at(std::size_t m) const { return v().at(m); }
  Integer w_at(std::size_t n) const { return w().at(n); }
};

SequencePair sequence_pair(const Integer& a, const Integer& b, int epsilon);

/// s_0 = 2, s_1 = 8a + 2, s_{v+2} = 2(2a+1) s_{v+1} - s_v. Every term is
/// checked against its companion t via a t^2 - (a+1) s^2 = -4.
std::vector<Integer> s_sequence(const Integer& a, std::size_t count);

/// b_nu = (s_nu^2 - 4) / a, exact (divisibility always holds).
Integer b_nu(const Integer& a, unsigned nu);

enum class PellEquation { first, second };

/// A fundamental solution inside the search box: (z0, x0) for
/// a z^2 - b x^2 = 4(a - b), or (z1, y1) for (a+1) z^2 - b y^2 = 4(a+1-b).
struct FundamentalSolution {
  Integer z0;
  Integer x0;  // x0 for the first equation, y1 for the second
  PellEquation equation = PellEquation::first;
};

/// Exhaustive scan of the fundamental-solution box
/// 1 <= x0 < sqrt(A(b-A)/(S-2)), 1 <= |z0| < sqrt((S-2)(b-A)/A)
/// with (A, S) = (a, s) or (a+1, t). Throws DomainError when b <= A.
std::vector<FundamentalSolution> fundamental_solutions(const Integer& a,
                                                       const Integer& b,
                                                       PellEquation eq);

enum class SequenceKind { v, w };

/// The closed congruence of a sequence term mod b^2, canonical in [0, b^2):
/// v_{2m} = 2e + b(a e m^2 + s m), v_{2m+1} = e s + b(as e m(m+1)/2 + 2m+1),
/// and the (a+1, t) analogues for w.
Integer congruence_class_mod_b2(const PairContext& ctx, SequenceKind kind,
                                std::size_t index);

/// Explicit form of v_m evaluated in certified arithmetic; escalates
/// precision until the enclosure pins a unique integer. Throws
/// PrecisionError at the cap.
Integer closed_form_v(const PairContext& ctx, std::size_t m,
                      mpfr_prec_t precision_cap = kPrecisionCap);

/// One solution of v_m = w_n, with the expected side-conditions checked
/// (violations are reported in the flags, never raised: a = 3 contexts
/// legitimately produce equal indices).
struct IntersectionHit {
  std::size_t m = 0, n = 0;
  Integer z;
  int epsilon = 1;
  Integer derived_c;        // (z^2 - 4) / b
  bool both_even = false;   // m, n even
  bool index_window_ok = false;    // n <= m <= 3n/2 + 1
  bool m_greater_n = false;        // m > n (expected for m >= 2)
  bool above_index_floor = false;  // m > 0.4672 (a+1)^{-1/2} b^{1/2}
  double index_floor = 0.0;
};

/// All solutions of v_m = w_n with 2 <= m <= m_max over both epsilon
/// branches, by exact two-pointer merge of the increasing sequences.
/// (The trivial index-0 coincidence v_0 = w_0 = 2e is not a solution:
/// z = 2e forces bc = 0.)
std::vector<IntersectionHit> find_intersections(const Integer& a,
                                                const Integer& b,
                                                std::size_t m_max);

/// {a, b, epsilon, m, n, z, derived_c} record.
std::string to_json(const IntersectionHit& hit, const Integer& a,
                    const Integer& b);

}  // namespace d4
