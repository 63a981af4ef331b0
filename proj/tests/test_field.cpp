#include <random>
#include <set>

#include "cubsurf/error.hpp"
#include "cubsurf/field/ext_field.hpp"
#include "cubsurf/field/gf.hpp"
#include "cubsurf/field/modular.hpp"
#include "cubsurf/field/roots.hpp"
#include "doctest.h"

using namespace cubsurf;
using namespace cubsurf::field;

TEST_CASE("make_extension picks reproducible moduli") {
  const ExtField f64 = ExtField::make(2, 6);
  CHECK(f64.order() == 64);
  // x^6 + x + 1 is the least irreducible sextic over F_2.
  CHECK(f64.modulus() == std::vector<std::uint64_t>{1, 1, 0, 0, 0, 0, 1});
  CHECK(ExtField::make(2, 6).modulus() == f64.modulus());

  const ExtField f7 = ExtField::make(7, 1);
  CHECK(f7.modulus() == std::vector<std::uint64_t>{0, 1});

  // Over F_3, x^2 + 1 is the least irreducible quadratic.
  CHECK(ExtField::make(3, 2).modulus() == std::vector<std::uint64_t>{1, 0, 1});

  CHECK_THROWS_AS(ExtField::make(9, 1), Error);
  try {
    ExtField::make(2, 25);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegreeTooLarge);
  }
  try {
    ExtField::make(15, 2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotPrime);
  }
}

TEST_CASE("least irreducible agrees with exhaustive search over small fields") {
  // Oracle: a polynomial of degree k <= 3 is irreducible iff it has no roots.
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (unsigned k : {2U, 3U}) {
      std::vector<std::uint64_t> expected;
      std::uint64_t total = 1;
      for (unsigned i = 0; i < k; ++i) total *= p;
      for (std::uint64_t n = 0; n < total && expected.empty(); ++n) {
        std::vector<std::uint64_t> f(k + 1, 0);
        std::uint64_t r = n;
        for (unsigned i = 0; i < k; ++i) {
          f[i] = r % p;
          r /= p;
        }
        f[k] = 1;
        bool has_root = false;
        for (std::uint64_t x = 0; x < p; ++x) {
          std::uint64_t acc = 0;
          for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
          has_root = has_root || acc == 0;
        }
        if (!has_root) expected = f;
      }
      CHECK(ExtField::make(p, k).modulus() == expected);
    }
  }
}

TEST_CASE("Frobenius fixes every element of F_9") {
  const ExtField f9 = ExtField::make(3, 2);
  for (std::uint64_t i = 0; i < 9; ++i) {
    const auto a = f9.from_index(i);
    CHECK(f9.pow(a, 9) == a);
  }
}

TEST_CASE("field axioms on sampled pairs") {
  std::mt19937_64 rng(7);
  for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 6}, {3, 4}, {13, 1}, {5, 3}, {1000003, 2}}) {
    const ExtField f = ExtField::make(p, k);
    const std::uint64_t q = f.order() > 1000000000000UL ? 1000000000000UL : f.order().get_ui();
    for (int it = 0; it < 1000; ++it) {
      const auto a = f.from_index(rng() % q);
      const auto b = f.from_index(rng() % q);
      const auto c = f.from_index(rng() % q);
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      if (!f.is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
      CHECK(f.frobenius(a) == f.pow(a, mpz_class(static_cast<unsigned long>(p))));
    }
    const auto g = f.from_index(q > 3 ? 3 : 1);
    CHECK(f.pow(g, f.order()) == g);
  }
}

TEST_CASE("table field matches the polynomial field") {
  for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 6}, {3, 2}, {5, 2}, {13, 1}, {2, 1}, {3, 1}, {7, 2}}) {
    const GFPtr gf = GF::make(p, k);
    const ExtField& ext = gf->ext();
    CHECK(gf->size() == ext.order());
    for (Elem a : gf->elements()) {
      for (Elem b : gf->elements()) {
        CHECK(gf->decode(gf->add(a, b)) == ext.add(gf->decode(a), gf->decode(b)));
        CHECK(gf->decode(gf->mul(a, b)) == ext.mul(gf->decode(a), gf->decode(b)));
        CHECK(gf->decode(gf->sub(a, b)) == ext.sub(gf->decode(a), gf->decode(b)));
      }
      if (!gf->is_zero(a)) CHECK(gf->mul(a, gf->inv(a)) == gf->one());
    }
  }
  const GFPtr f64 = GF::make(2, 6);
  std::set<std::uint32_t> powers;
  for (std::uint32_t i = 0; i < 63; ++i) powers.insert(f64->exp(i).v);
  CHECK(powers.size() == 63);  // multiplicative group has order 63
}

TEST_CASE("embedding is a ring homomorphism") {
  const GFPtr f4 = GF::make(2, 2);
  const GFPtr f64 = GF::make(2, 6);
  const auto emb = embedding(*f4, *f64);
  for (Elem a : f4->elements()) {
    for (Elem b : f4->elements()) {
      CHECK(emb[f4->mul(a, b).v] == f64->mul(emb[a.v], emb[b.v]));
      CHECK(emb[f4->add(a, b).v] == f64->add(emb[a.v], emb[b.v]));
    }
  }
}

TEST_CASE("solve_quadratic examples") {
  const GFPtr f7 = GF::make(7, 1);
  auto r = solve_quadratic(*f7, f7->one(), f7->zero(), f7->from_int(-1));
  CHECK(r.roots == std::vector<Elem>{Elem{1}, Elem{6}});
  const GFPtr f2 = GF::make(2, 1);
  CHECK(solve_quadratic(*f2, f2->one(), f2->one(), f2->one()).roots.empty());
}

template <class F>
void check_quadratics_exhaustively(const F& f, std::mt19937_64& rng, int samples) {
  const auto q = static_cast<std::uint64_t>(f.order().get_ui());
  for (int it = 0; it < samples; ++it) {
    const auto a = f.from_index(rng() % q);
    const auto b = f.from_index(rng() % q);
    const auto c = f.from_index(rng() % q);
    if (f.is_zero(a) && f.is_zero(b) && f.is_zero(c)) continue;
    std::vector<typename F::Element> brute;
    for (std::uint64_t i = 0; i < q; ++i) {
      const auto t = f.from_index(i);
      if (f.is_zero(f.add(f.mul(f.add(f.mul(a, t), b), t), c))) brute.push_back(t);
    }
    std::sort(brute.begin(), brute.end());
    const auto got = solve_quadratic(f, a, b, c);
    if (f.is_zero(a) && f.is_zero(b)) {
      CHECK(got.identically_zero == f.is_zero(c));
    } else {
      CHECK(got.roots == brute);
    }
  }
}

TEST_CASE("solve_quadratic agrees with exhaustive evaluation") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 6}, {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 12},
                      {3, 2}, {5, 1}, {13, 1}, {17, 2}, {4093, 1}, {3, 7}}) {
    const GFPtr gf = GF::make(p, k);
    check_quadratics_exhaustively(*gf, rng, 60);
  }
  // t^2 + t + c over F_64 for every c.
  const GFPtr f64 = GF::make(2, 6);
  for (Elem c : f64->elements()) {
    int brute = 0;
    for (Elem t : f64->elements()) brute += f64->is_zero(f64->add(f64->add(f64->mul(t, t), t), c)) ? 1 : 0;
    CHECK(static_cast<int>(solve_quadratic(*f64, f64->one(), f64->one(), c).roots.size()) == brute);
  }
  check_quadratics_exhaustively(ExtField::make(2, 4), rng, 40);
  check_quadratics_exhaustively(ExtField::make(5, 2), rng, 40);
}

TEST_CASE("roots_of_cubic examples") {
  const GFPtr f31 = GF::make(31, 1);
  CHECK(powmod(2, 10, 31) == 1);
  // t^3 - 2 as the binary form s^3 - 2 t^3
  auto r = roots_of_cubic(*f31, f31->one(), f31->zero(), f31->zero(), f31->from_int(-2));
  CHECK(r.roots.size() == 3);
  CHECK(r.extension_roots == 0);
  for (const auto& root : r.roots) CHECK(f31->pow_u(root.s, 3) == f31->from_int(2));

  const GFPtr f7 = GF::make(7, 1);
  r = roots_of_cubic(*f7, f7->one(), f7->zero(), f7->zero(), f7->zero());
  REQUIRE(r.roots.size() == 1);
  CHECK(r.roots[0].s == f7->zero());
  CHECK(r.roots[0].multiplicity == 3);

  const GFPtr f5 = GF::make(5, 1);
  r = roots_of_cubic(*f5, f5->one(), f5->zero(), f5->zero(), f5->from_int(-2));
  int brute = 0;
  for (Elem t : f5->elements()) brute += f5->pow_u(t, 3) == f5->from_int(2) ? 1 : 0;
  CHECK(brute == 1);
  CHECK(r.roots.size() == 1);
  CHECK(r.extension_roots == 2);

  // c3 = 0: root at infinity.
  r = roots_of_cubic(*f7, f7->zero(), f7->zero(), f7->one(), f7->one());
  CHECK(r.roots.back().at_infinity);
  CHECK(r.roots.back().multiplicity == 2);

  try {
    roots_of_cubic(*f7, f7->zero(), f7->zero(), f7->zero(), f7->zero());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kIdenticallyZero);
  }
}

TEST_CASE("roots_of_cubic multiplicities against brute force") {
  std::mt19937_64 rng(3);
  for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 6}, {2, 1}, {3, 2}, {7, 1}, {13, 1}, {2, 4}}) {
    const GFPtr gf = GF::make(p, k);
    const GF& f = *gf;
    for (int it = 0; it < 300; ++it) {
      Elem c[4];
      for (auto& x : c) x = f.from_index(rng() % f.size());
      // Force repeated roots some of the time: (s - a t)^2 (s - b t).
      if (it % 3 == 0) {
        const Elem a = f.from_index(rng() % f.size());
        const Elem b = f.from_index(rng() % f.size());
        c[3] = f.one();
        c[2] = f.neg(f.add(f.add(a, a), b));
        c[1] = f.add(f.mul(a, a), f.mul(f.from_int(2), f.mul(a, b)));
        c[0] = f.neg(f.mul(f.mul(a, a), b));
      }
      auto got = try_roots_of_cubic(f, c[3], c[2], c[1], c[0]);
      if (!got) continue;
      int total = got->extension_roots;
      for (const auto& root : got->roots) {
        total += root.multiplicity;
        if (!root.at_infinity) {
          const Poly<GF> g{c[0], c[1], c[2], c[3]};
          CHECK(f.is_zero(poly_eval(f, g, root.s)));
        }
      }
      CHECK(total == 3);
      int brute = 0;
      for (Elem t : f.elements()) {
        const Poly<GF> g{c[0], c[1], c[2], c[3]};
        if (f.is_zero(poly_eval(f, g, t)) && !(f.is_zero(c[0]) && f.is_zero(c[1]) && f.is_zero(c[2]) && f.is_zero(c[3]))) ++brute;
      }
      int affine = 0;
      for (const auto& root : got->roots) affine += root.at_infinity ? 0 : 1;
      CHECK(affine == brute);
    }
  }
}

TEST_CASE("cube roots of unity") {
  const GFPtr f13 = GF::make(13, 1);
  CHECK(cube_roots_of_unity(*f13) == std::vector<Elem>{Elem{1}, Elem{3}, Elem{9}});
  const GFPtr f2 = GF::make(2, 1);
  CHECK(cube_roots_of_unity(*f2) == std::vector<Elem>{Elem{1}});
  const GFPtr f7 = GF::make(7, 1);
  std::vector<Elem> brute;
  for (Elem t : f7->elements()) {
    if (f7->pow_u(t, 3) == f7->one()) brute.push_back(t);
  }
  CHECK(cube_roots_of_unity(*f7) == brute);
  CHECK(brute.size() == 3);
  const GFPtr f4 = GF::make(2, 2);
  CHECK(cube_roots_of_unity(*f4).size() == 3);
}

TEST_CASE("field JSON round trip") {
  const ExtField f = ExtField::make(2, 6);
  const auto j = f.to_json();
  CHECK(j.at("p") == 2);
  CHECK(j.at("k") == 6);
  CHECK(ExtField::from_json(j).modulus() == f.modulus());
}
