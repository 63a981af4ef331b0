#include <set>

#include "cubsurf/error.hpp"
#include "cubsurf/field/modular.hpp"
#include "cubsurf/planecubic.hpp"
#include "doctest.h"

using namespace cubsurf;

namespace {

std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (field::is_prime(p)) out.push_back(p);
  }
  return out;
}

CurvePoint pt(const PlaneCubic& c, long x, long y, long z) { return c.reduce(x, y, z); }

}  // namespace

TEST_CASE("curve points by direct scan") {
  for (std::uint64_t p : {2, 5, 7, 11, 13}) {
    const PlaneCubic c(p);
    const GF& f = c.field();
    std::set<CurvePoint> brute;
    for (Elem x : f.elements()) {
      for (Elem y : f.elements()) {
        for (Elem z : f.elements()) {
          if (f.is_zero(x) && f.is_zero(y) && f.is_zero(z)) continue;
          if (c.on_curve({x, y, z})) brute.insert(c.normalize({x, y, z}));
        }
      }
    }
    CHECK(std::vector<CurvePoint>(brute.begin(), brute.end()) == c.points());
    CHECK(brute.count(c.origin()) == 1);
  }
  CHECK(curve_points(7).size() == 9);
  const PlaneCubic c2(2);
  CHECK(c2.points().size() == 3);
  CHECK(std::count(c2.points().begin(), c2.points().end(), pt(c2, 1, 1, 0)) == 1);
  CHECK_THROWS_AS(PlaneCubic(3), Error);
  try {
    curve_points(3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCharacteristicThree);
  }
}

TEST_CASE("third point examples") {
  for (std::uint64_t p : primes_upto(60)) {
    if (p == 3) continue;
    const PlaneCubic c(p);
    CHECK(c.third_point(c.origin(), pt(c, 0, 1, -1)) == pt(c, 1, 0, -1));
    CHECK(c.third_point(c.origin(), c.origin()) == c.origin());
    for (const CurvePoint& a : c.points()) {
      CHECK(c.add(a, c.origin()) == a);
      CHECK(c.add(a, c.neg(a)) == c.origin());
    }
  }
}

TEST_CASE("group axioms hold exhaustively for p <= 31") {
  for (std::uint64_t p : primes_upto(31)) {
    if (p == 3) continue;
    const PlaneCubic c(p);
    const auto& pts = c.points();
    bool ok = true;
    for (const auto& a : pts) {
      for (const auto& b : pts) {
        const CurvePoint ab = c.add(a, b);
        if (ab != c.add(b, a)) ok = false;
        for (const auto& d : pts) {
          if (c.add(ab, d) != c.add(a, c.add(b, d))) ok = false;
        }
      }
    }
    CHECK_MESSAGE(ok, "p = " << p);
  }
}

TEST_CASE("collinear triples sum to zero") {
  // Lines through the point set, found without the chord-tangent routine.
  for (std::uint64_t p : {2, 5, 7, 11, 13, 19}) {
    const PlaneCubic c(p);
    const GF& f = c.field();
    const Elem three = f.from_int(3);
    int checked = 0;
    std::vector<std::array<Elem, 3>> lines;
    for (Elem b : f.elements()) {
      for (Elem cc : f.elements()) lines.push_back({f.one(), b, cc});
    }
    for (Elem cc : f.elements()) lines.push_back({f.zero(), f.one(), cc});
    lines.push_back({f.zero(), f.zero(), f.one()});
    for (const auto& l : lines) {
      std::vector<CurvePoint> on;
      for (const auto& q : c.points()) {
        Elem s = f.zero();
        for (int i = 0; i < 3; ++i) s = f.add(s, f.mul(l[i], q.x[i]));
        if (f.is_zero(s)) on.push_back(q);
      }
      auto tangent_at = [&](const CurvePoint& q) {
        std::array<Elem, 3> g;
        for (int i = 0; i < 3; ++i) g[i] = f.mul(three, f.mul(q.x[i], q.x[i]));
        return c.normalize(g) == c.normalize(l);
      };
      if (on.size() == 3) {
        CHECK(c.add(c.add(on[0], on[1]), on[2]) == c.origin());
        ++checked;
      } else if (on.size() == 2) {
        const CurvePoint& t = tangent_at(on[0]) ? on[0] : on[1];
        const CurvePoint& r = tangent_at(on[0]) ? on[1] : on[0];
        CHECK(tangent_at(t));
        CHECK(c.add(c.add(t, t), r) == c.origin());
        ++checked;
      } else if (on.size() == 1 && tangent_at(on[0])) {
        CHECK(c.mul(on[0], 3) == c.origin());
        ++checked;
      }
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("flexes are the 3-torsion") {
  for (std::uint64_t p : primes_upto(61)) {
    if (p == 3) continue;
    const PlaneCubic c(p);
    int flexes = 0;
    for (const auto& q : c.points()) {
      CHECK(c.is_flex(q) == (c.mul(q, 3) == c.origin()));
      flexes += c.is_flex(q) ? 1 : 0;
    }
    if (p % 3 == 1) {
      CHECK(flexes == 9);
      CHECK(c.points().size() % 9 == 0);
    }
  }
}

TEST_CASE("group structure") {
  CHECK(PlaneCubic(7).group_structure() == std::vector<std::uint64_t>{3, 3});
  const PlaneCubic c13(13);
  const auto s = c13.group_structure();
  REQUIRE(s.size() == 2);
  CHECK(s[0] * s[1] == c13.points().size());
  CHECK(s[1] % s[0] == 0);
  CHECK(s[0] % 3 == 0);
}

TEST_CASE("Weierstrass model agrees") {
  for (std::uint64_t p : primes_upto(200)) {
    if (p == 3) continue;
    const WeierstrassCheck w = weierstrass_check(p);
    CHECK_MESSAGE(w.agree(), "p = " << p);
  }
  CHECK(weierstrass_point_count(2) == 3);
}

TEST_CASE("quotients by 2 and 3") {
  const PicQuotient q13 = pic_mod(13, 3);
  CHECK(q13.dim() == 2);
  CHECK(q13.every_class_represented());
  CHECK(q13.representatives().size() == 9);
  CHECK(q13.class_index(q13.curve().origin()) == 0);
  CHECK(pic_mod(31, 2).dim() == 2);
  CHECK(pic_mod(31, 2).every_class_represented());
  try {
    pic_mod(7, 2);
    FAIL("expected HypothesisFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kHypothesisFailed);
  }
  CHECK_THROWS_AS(pic_mod(5, 3), Error);
  CHECK_THROWS_AS(pic_mod(13, 5), Error);
  int tested2 = 0;
  for (std::uint64_t p : primes_upto(200)) {
    if (p % 3 != 1) continue;
    const PicQuotient q3 = pic_mod(p, 3);
    CHECK_MESSAGE(q3.dim() == 2, "p = " << p);
    CHECK(q3.dim() == q3.dim_from_structure());
    CHECK(q3.every_class_represented());
    if (field::powmod(2, (p - 1) / 3, p) != 1) continue;
    const PicQuotient q2 = pic_mod(p, 2);
    CHECK_MESSAGE(q2.dim() == 2, "p = " << p);
    CHECK(q2.dim() == q2.dim_from_structure());
    CHECK(q2.every_class_represented());
    ++tested2;
  }
  CHECK(tested2 >= 3);
}

TEST_CASE("class coordinates are additive") {
  const PicQuotient q = pic_mod(31, 3);
  const PlaneCubic& c = q.curve();
  for (const auto& a : c.points()) {
    for (const auto& b : c.points()) {
      const auto ca = q.coords(a);
      const auto cb = q.coords(b);
      const auto cs = q.coords(c.add(a, b));
      for (int i = 0; i < q.dim(); ++i) CHECK(cs[i] == (ca[i] + cb[i]) % 3);
    }
  }
}

TEST_CASE("prime conditions and the 2-division polynomial") {
  const PrimeCondition c31 = prime_condition(31);
  CHECK((c31.cond_a && c31.cond_b && c31.t3_minus_2_splits));
  const PrimeCondition c7 = prime_condition(7);
  CHECK((c7.cond_a && !c7.cond_b && !c7.t3_minus_2_splits));
  const PrimeCondition c5 = prime_condition(5);
  CHECK((!c5.cond_a && c5.cond_b && !c5.t3_minus_2_splits));
  CHECK(two_division_check(31).splits);
  CHECK_FALSE(two_division_check(7).splits);
  CHECK_FALSE(two_division_check(13).splits);
  for (std::uint64_t p : primes_upto(1000)) {
    if (p <= 3) continue;
    const PrimeCondition pc = prime_condition(p);
    CHECK((pc.cond_a && pc.cond_b) == pc.t3_minus_2_splits);
    CHECK(two_division_check(p).agree());
  }
  CHECK_THROWS_AS(prime_condition(3), Error);
  CHECK_THROWS_AS(two_division_check(2), Error);
}
