#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "d4tuples/bounds.hpp"
#include "d4tuples/errors.hpp"
#include "d4tuples/pell.hpp"

using namespace d4;

TEST_CASE("pair context witnesses") {
  PairContext ctx = PairContext::make(3, 15, -1);
  CHECK(ctx.s == 7);
  CHECK(ctx.t == 8);
  CHECK_THROWS_AS(PairContext::make(1, 7, 1), DomainError);  // 11 not square
  CHECK_THROWS_AS(PairContext::make(1, 5, 1), DomainError);  // 2*5+4 not square
  CHECK_THROWS_AS(PairContext::make(1, 96, 2), DomainError);
}

TEST_CASE("s_sequence start and companion identity") {
  auto s = s_sequence(1, 3);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == 2);
  CHECK(s[1] == 10);
  CHECK(s[2] == 58);
  auto s5 = s_sequence(5, 4);
  CHECK(s5[1] == 42);  // 8a + 2
  for (std::size_t i = 0; i < s5.size(); ++i) {
    // every term has a companion t with a t^2 - (a+1) s^2 = -4
    Integer t2 = (Integer(6) * s5[i] * s5[i] - 4) / 5;
    CHECK(perfect_square_root(t2).has_value());
  }
}

// The printed polynomial table for b_nu, frozen as an independent oracle.
// b4's linear coefficient is 8320 = 2*(480*2 + 80^2/... ) from the symbolic
// expansion of ((512a^4+896a^3+480a^2+80a+2)^2 - 4)/a; the recurrence value
// at a = 1 (3880896) pins it uniquely against a transcription slip.
namespace {
Integer poly_eval(const std::vector<long>& coeffs_low_to_high, long a) {
  Integer acc(0);
  for (auto it = coeffs_low_to_high.rbegin(); it != coeffs_low_to_high.rend();
       ++it)
    acc = acc * a + *it;
  return acc;
}
const std::vector<std::vector<long>> kBPolynomials = {
    {32, 64},
    {96, 704, 1536, 1024},
    {192, 2944, 15872, 37888, 40960, 16384},
    {320, 8320, 80384, 375808, 942080, 1294336, 917504, 262144},
};
}  // namespace

TEST_CASE("b_nu matches the polynomial table for a in [1,10]") {
  for (long a = 1; a <= 10; ++a)
    for (unsigned nu = 1; nu <= 4; ++nu)
      CHECK(b_nu(a, nu) == poly_eval(kBPolynomials[nu - 1], a));
}

TEST_CASE("b_nu spec rows") {
  CHECK(b_nu(1, 1) == 96);
  CHECK(b_nu(1, 2) == 3360);
  CHECK(b_nu(2, 1) == 160);
  CHECK(b_nu(5, 1) == 352);
  CHECK(b_nu(1, 3) == 114240);  // (338^2 - 4) / 1
  CHECK(b_nu(1, 4) == 3880896);
  CHECK_THROWS_AS(b_nu(1, 0), DomainError);
  CHECK_THROWS_AS(b_nu(0, 1), DomainError);
}

TEST_CASE("fundamental solutions boxes") {
  auto sols = fundamental_solutions(1, 96, PellEquation::first);
  // (z0, x0) = (+-2, 2) and (+-22, 3) fill the Lemma box for (1, 96)
  REQUIRE(sols.size() == 4);
  CHECK(sols[0].z0 == -2);
  CHECK(sols[0].x0 == 2);
  CHECK(sols[1].z0 == 2);
  CHECK(sols[1].x0 == 2);
  CHECK(sols[2].z0 == -22);
  CHECK(sols[2].x0 == 3);
  CHECK(sols[3].z0 == 22);

  auto sols315 = fundamental_solutions(3, 15, PellEquation::first);
  REQUIRE(sols315.size() == 2);
  CHECK(sols315[0].z0 == -2);
  CHECK(sols315[1].z0 == 2);
  CHECK(sols315[0].x0 == 2);

  // (1, 5) only supports the first equation (2*5 + 4 is not a square), and
  // its box holds no solution of z^2 - 5 x^2 = -16
  CHECK(fundamental_solutions(1, 5, PellEquation::first).empty());
  CHECK_THROWS_AS(fundamental_solutions(1, 5, PellEquation::second),
                  DomainError);

  CHECK_THROWS_AS(fundamental_solutions(96, 5, PellEquation::first),
                  DomainError);
}

TEST_CASE("fundamental solutions satisfy their equations and the box") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{
           {1, 96}, {2, 160}, {3, 224}, {1, 3360}, {5, 352}}) {
    PairContext ctx = PairContext::make(a, b, 1);
    for (auto eq : {PellEquation::first, PellEquation::second}) {
      const Integer A = eq == PellEquation::first ? ctx.a : ctx.a + 1;
      const Integer S = eq == PellEquation::first ? ctx.s : ctx.t;
      auto sols = fundamental_solutions(a, b, eq);
      for (const auto& sol : sols) {
        CHECK(A * sol.z0 * sol.z0 - ctx.b * sol.x0 * sol.x0 ==
              4 * (A - ctx.b));
        CHECK(sol.x0 * sol.x0 * (S - 2) < A * (ctx.b - A));
        CHECK(sol.z0 * sol.z0 * A < (S - 2) * (ctx.b - A));
        // Eq-(9)-style congruence z0^2 = 4 (mod b)
        Integer res = (sol.z0 * sol.z0 - 4) % ctx.b;
        CHECK(res == 0);
      }
      // completeness: independent direct sweep over the z side of the box
      std::size_t count = 0;
      for (Integer z = 1; z * z * A < (S - 2) * (ctx.b - A); ++z) {
        Integer num = A * z * z - 4 * (A - ctx.b);
        if (num % ctx.b != 0) continue;
        auto x = perfect_square_root(num / ctx.b);
        if (!x || sgn(*x) == 0) continue;
        if (*x * *x * (S - 2) < A * (ctx.b - A)) count += 2;  // both signs of z
      }
      CHECK(count == sols.size());
    }
  }
}

TEST_CASE("sequence pair values") {
  SequencePair sp = sequence_pair(3, 15, -1);
  CHECK(sp.v_at(0) == -2);
  CHECK(sp.v_at(1) == 8);
  CHECK(sp.v_at(2) == 58);
  CHECK(sp.w_at(0) == -2);
  CHECK(sp.w_at(1) == 7);
  CHECK(sp.w_at(2) == 58);

  CHECK(sequence_pair(1, 96, 1).v_at(1) == 106);   // eps s + b
  CHECK(sequence_pair(1, 96, -1).v_at(2) == 862);  // 10*86 + 2
}

TEST_CASE("closed form equals the recurrence") {
  // grid: a <= 10, b = b_nu(a) up to 10^6, both branches, every m <= 50
  std::vector<std::pair<long, Integer>> contexts{{3, Integer(15)}};
  for (long a = 1; a <= 10; ++a)
    for (unsigned nu = 1; nu <= 3; ++nu)
      if (b_nu(a, nu) <= 1000000) contexts.emplace_back(a, b_nu(a, nu));
  for (const auto& [a, b] : contexts) {
    for (int eps : {1, -1}) {
      SequencePair sp = sequence_pair(a, b, eps);
      PairContext ctx = sp.context;
      RecurrenceSequence v = sp.v();
      for (std::size_t m = 0; m <= 50; ++m) {
        CHECK(closed_form_v(ctx, m) == v.value());
        v.advance();
      }
    }
  }
  // m = 0 collapses to 2 eps
  CHECK(closed_form_v(PairContext::make(1, 96, 1), 0) == 2);
  CHECK(closed_form_v(PairContext::make(1, 96, -1), 0) == -2);
  CHECK(closed_form_v(PairContext::make(1, 96, 1), 1) == 106);
  CHECK(closed_form_v(PairContext::make(3, 15, -1), 2) == 58);
}

TEST_CASE("closed form on a large-b context") {
  // a <= 10, b <= 10^6 regime
  Integer b = b_nu(7, 2);
  REQUIRE(b == 431520);
  PairContext ctx = PairContext::make(7, b, -1);
  SequencePair sp{ctx};
  CHECK(closed_form_v(ctx, 50) == sp.v_at(50));
  PairContext big = PairContext::make(10, b_nu(10, 1), 1);
  CHECK(closed_form_v(big, 50) == SequencePair{big}.v_at(50));
}

TEST_CASE("congruence classes mod b^2") {
  PairContext ctx = PairContext::make(3, 15, -1);
  // v_2 = 58: 2e + b(a e m^2 + s m) = -2 + 15(-3 + 7) = 58 (mod 225)
  CHECK(congruence_class_mod_b2(ctx, SequenceKind::v, 2) == 58);
  // index-0 and index-1 rows collapse to the initial terms
  PairContext cp = PairContext::make(1, 96, 1);
  CHECK(congruence_class_mod_b2(cp, SequenceKind::w, 0) == 2);
  CHECK(congruence_class_mod_b2(cp, SequenceKind::v, 1) ==
        (cp.s + cp.b) % (cp.b * cp.b));
}

TEST_CASE("congruence classes agree with the sequences up to index 30") {
  for (auto [a, b] : std::vector<std::pair<long, long>>{
           {3, 15}, {1, 96}, {2, 160}, {5, 352}, {1, 3360}}) {
    for (int eps : {1, -1}) {
      SequencePair sp = sequence_pair(a, b, eps);
      const Integer b2 = sp.context.b * sp.context.b;
      RecurrenceSequence v = sp.v();
      RecurrenceSequence w = sp.w();
      for (std::size_t i = 0; i <= 30; ++i) {
        Integer v_mod, w_mod;
        mpz_fdiv_r(v_mod.get_mpz_t(), v.value().get_mpz_t(), b2.get_mpz_t());
        mpz_fdiv_r(w_mod.get_mpz_t(), w.value().get_mpz_t(), b2.get_mpz_t());
        CHECK(congruence_class_mod_b2(sp.context, SequenceKind::v, i) == v_mod);
        CHECK(congruence_class_mod_b2(sp.context, SequenceKind::w, i) == w_mod);
        v.advance();
        w.advance();
      }
    }
  }
}

TEST_CASE("find_intersections knows the (3,15) solution") {
  auto hits = find_intersections(3, 15, 50);
  REQUIRE(hits.size() == 1);
  const auto& hit = hits[0];
  CHECK(hit.m == 2);
  CHECK(hit.n == 2);
  CHECK(hit.z == 58);
  CHECK(hit.epsilon == -1);
  CHECK(hit.derived_c == 224);
  CHECK(hit.both_even);
  CHECK(hit.index_window_ok);   // 2 <= 2 <= 4
  CHECK(!hit.m_greater_n);      // the a=3 family breaks Lemma strictness
  CHECK(hit.above_index_floor); // 2 > 0.4672 sqrt(15/4) = 0.905
  CHECK(hit.index_floor == doctest::Approx(0.9047).epsilon(0.01));
}

TEST_CASE("find_intersections emptiness") {
  CHECK(find_intersections(1, 96, 300).empty());
  CHECK(find_intersections(2, 160, 200).empty());
  CHECK(find_intersections(3, 15, 1).empty());  // below the search floor
  CHECK_THROWS_AS(find_intersections(15, 3, 50), DomainError);
}

TEST_CASE("sequences grow monotonically and beat alpha^m") {
  PairContext ctx = PairContext::make(1, 96, -1);
  SequencePair sp{ctx};
  RecurrenceSequence v = sp.v();
  CertifiedReal alpha = alpha_of(ctx, 512);
  Integer prev = v.value();
  v.advance();
  for (std::size_t m = 1; m <= 50; ++m) {
    CHECK(v.value() > prev);
    // Lemma bound z = v_m > alpha^m, certified
    auto below = alpha.pow(m).certified_less(
        CertifiedReal::exact(v.value(), 512));
    CHECK(below == true);
    prev = v.value();
    v.advance();
  }
}

TEST_CASE("intersection hit serializes to the documented record") {
  auto hits = find_intersections(3, 15, 10);
  REQUIRE(!hits.empty());
  std::string line = to_json(hits[0], 3, 15);
  CHECK(line.find("\"a\": 3") != std::string::npos);
  CHECK(line.find("\"epsilon\": -1") != std::string::npos);
  CHECK(line.find("\"derived_c\": \"224\"") != std::string::npos);
}
