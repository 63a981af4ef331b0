#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "cubsurf/error.hpp"
#include "cubsurf/field/poly.hpp"

namespace cubsurf::field {

/// Absolute trace to F_p: sum of a^{p^i} for i < n where q = p^n.
template <class F>
typename F::Element absolute_trace(const F& f, typename F::Element a) {
  auto acc = f.zero();
  const mpz_class p(static_cast<unsigned long>(f.characteristic()));
  for (unsigned i = 0; i < f.degree(); ++i) {
    acc = f.add(acc, a);
    a = f.pow(a, p);
  }
  return acc;
}

template <class F>
bool is_square(const F& f, typename F::Element a) {
  if (f.is_zero(a) || f.characteristic() == 2) return true;
  return f.pow(a, (f.order() - 1) / 2) == f.one();
}

/// A square root of a, or nullopt when a is not a square.
template <class F>
std::optional<typename F::Element> sqrt(const F& f, typename F::Element a) {
  using E = typename F::Element;
  if (f.is_zero(a)) return a;
  const mpz_class q = f.order();
  if (f.characteristic() == 2) return f.pow(a, q / 2);
  if (!is_square(f, a)) return std::nullopt;
  // Tonelli-Shanks with q - 1 = 2^s m, m odd.
  mpz_class m = q - 1;
  unsigned s = 0;
  while (mpz_even_p(m.get_mpz_t()) != 0) {
    m /= 2;
    ++s;
  }
  E z = f.one();
  for (std::uint64_t i = 2;; ++i) {
    z = f.from_index(i);
    if (!f.is_zero(z) && !is_square(f, z)) break;
  }
  E c = f.pow(z, m);
  E t = f.pow(a, m);
  E r = f.pow(a, (m + 1) / 2);
  unsigned mm = s;
  while (t != f.one()) {
    unsigned i = 0;
    E tt = t;
    while (tt != f.one()) {
      tt = f.mul(tt, tt);
      ++i;
    }
    E b = c;
    for (unsigned j = 0; j + i + 1 < mm; ++j) b = f.mul(b, b);
    r = f.mul(r, b);
    c = f.mul(b, b);
    t = f.mul(t, c);
    mm = i;
  }
  return r;
}

template <class F>
struct QuadraticRoots {
  bool identically_zero = false;
  std::vector<typename F::Element> roots;  // distinct, ascending
};

namespace detail {

// A solution of u^2 + u = d in characteristic 2, assuming Tr(d) = 0.
template <class F>
typename F::Element artin_schreier_root(const F& f, typename F::Element d) {
  using E = typename F::Element;
  const unsigned n = f.degree();
  const mpz_class two(2);
  if (n % 2 == 1) {
    // Half-trace: sum of d^{4^i} for 0 <= i <= (n-1)/2.
    E acc = f.zero();
    E x = d;
    for (unsigned i = 0; i <= (n - 1) / 2; ++i) {
      acc = f.add(acc, x);
      x = f.pow(f.pow(x, two), two);
    }
    return acc;
  }
  // General case: pick tau with Tr(tau) = 1, then
  // u = sum_{i<n} (sum_{j>i} tau^{2^j}) d^{2^i}.
  E tau = f.one();
  for (std::uint64_t i = 2;; ++i) {
    tau = f.from_index(i);
    if (absolute_trace(f, tau) == f.one()) break;
  }
  std::vector<E> tau_pows(n);
  std::vector<E> d_pows(n);
  tau_pows[0] = tau;
  d_pows[0] = d;
  for (unsigned i = 1; i < n; ++i) {
    tau_pows[i] = f.pow(tau_pows[i - 1], two);
    d_pows[i] = f.pow(d_pows[i - 1], two);
  }
  E u = f.zero();
  E tail = f.zero();
  for (unsigned i = n; i-- > 0;) {
    u = f.add(u, f.mul(tail, d_pows[i]));
    tail = f.add(tail, tau_pows[i]);
  }
  return u;
}

template <class F>
void sort_unique(std::vector<typename F::Element>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Roots of a t^2 + b t + c in the field f. In characteristic 2 the
/// Artin-Schreier reduction u^2 + u = d with the trace test is used.
template <class F>
QuadraticRoots<F> solve_quadratic(const F& f, typename F::Element a, typename F::Element b,
                                  typename F::Element c) {
  using E = typename F::Element;
  QuadraticRoots<F> out;
  if (f.is_zero(a)) {
    if (f.is_zero(b)) {
      out.identically_zero = f.is_zero(c);
      return out;
    }
    out.roots.push_back(f.neg(f.div(c, b)));
    return out;
  }
  if (f.characteristic() == 2) {
    const E bb = f.div(b, a);
    const E cc = f.div(c, a);
    if (f.is_zero(bb)) {
      out.roots.push_back(*sqrt(f, cc));
      return out;
    }
    const E d = f.div(cc, f.mul(bb, bb));
    if (!f.is_zero(absolute_trace(f, d))) return out;
    const E u = detail::artin_schreier_root(f, d);
    out.roots = {f.mul(bb, u), f.mul(bb, f.add(u, f.one()))};
    detail::sort_unique<F>(out.roots);
    return out;
  }
  const E disc = f.sub(f.mul(b, b), f.mul(f.from_int(4), f.mul(a, c)));
  const auto r = sqrt(f, disc);
  if (!r) return out;
  const E inv2a = f.inv(f.add(a, a));
  out.roots = {f.mul(f.sub(*r, b), inv2a), f.mul(f.sub(f.neg(*r), b), inv2a)};
  detail::sort_unique<F>(out.roots);
  return out;
}

/// A root (s:t) of a binary form, normalized to (x:1) or (1:0).
template <class F>
struct BinaryRoot {
  typename F::Element s;
  typename F::Element t;
  int multiplicity = 1;
  bool at_infinity = false;
};

template <class F>
struct CubicRoots {
  std::vector<BinaryRoot<F>> roots;  // affine roots ascending, then infinity
  int extension_roots = 0;           // 3 - sum of rational multiplicities
};

namespace detail {

// Distinct roots of a squarefree product of linear factors g.
template <class F>
void split_linear(const F& f, const Poly<F>& g, std::vector<typename F::Element>& out) {
  using E = typename F::Element;
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(f.neg(f.div(g[0], g[1])));
    return;
  }
  const mpz_class q = f.order();
  for (std::uint64_t i = 0; mpz_cmp_ui(q.get_mpz_t(), i) > 0; ++i) {
    const E a = f.from_index(i);
    Poly<F> h;
    if (f.characteristic() == 2) {
      // Tr(a x) mod g
      Poly<F> x{f.zero(), a};
      Poly<F> acc;
      Poly<F> term = poly_rem(f, x, g);
      for (unsigned j = 0; j < f.degree(); ++j) {
        acc = poly_add(f, acc, term);
        term = poly_rem(f, poly_mul(f, term, term), g);
      }
      h = poly_gcd(f, g, acc);
    } else {
      Poly<F> shifted{a, f.one()};
      Poly<F> pw = poly_powmod(f, shifted, (q - 1) / 2, g);
      h = poly_gcd(f, g, poly_sub(f, pw, Poly<F>{f.one()}));
    }
    if (h.size() > 1 && h.size() < g.size()) {
      split_linear(f, h, out);
      split_linear(f, poly_divmod(f, g, h).first, out);
      return;
    }
  }
}

}  // namespace detail

/// Rational roots of c3 s^3 + c2 s^2 t + c1 s t^2 + c0 t^3 over f, with
/// multiplicity. Returns nullopt when all coefficients vanish.
template <class F>
std::optional<CubicRoots<F>> try_roots_of_cubic(const F& f, typename F::Element c3, typename F::Element c2,
                                                typename F::Element c1, typename F::Element c0) {
  using E = typename F::Element;
  CubicRoots<F> out;
  Poly<F> g{c0, c1, c2, c3};
  poly_trim(f, g);
  if (g.empty()) return std::nullopt;
  const int inf_mult = 3 - poly_degree<F>(g);
  int rational = inf_mult;
  if (g.size() > 1) {
    const Poly<F> x{f.zero(), f.one()};
    const Poly<F> xq = poly_powmod(f, x, f.order(), g);
    const Poly<F> lin = poly_gcd(f, g, poly_sub(f, xq, x));
    std::vector<E> distinct;
    detail::split_linear(f, lin, distinct);
    std::sort(distinct.begin(), distinct.end());
    for (const E& r : distinct) {
      int mult = 0;
      Poly<F> rest = g;
      const Poly<F> lin_factor{f.neg(r), f.one()};
      for (;;) {
        auto [qq, rr] = poly_divmod(f, rest, lin_factor);
        if (!rr.empty()) break;
        rest = std::move(qq);
        ++mult;
      }
      out.roots.push_back(BinaryRoot<F>{r, f.one(), mult, false});
      rational += mult;
    }
  }
  if (inf_mult > 0) out.roots.push_back(BinaryRoot<F>{f.one(), f.zero(), inf_mult, true});
  out.extension_roots = 3 - rational;
  return out;
}

/// As try_roots_of_cubic; throws IdenticallyZero for the zero form.
template <class F>
CubicRoots<F> roots_of_cubic(const F& f, typename F::Element c3, typename F::Element c2,
                             typename F::Element c1, typename F::Element c0) {
  auto r = try_roots_of_cubic(f, c3, c2, c1, c0);
  if (!r) throw Error(ErrorKind::kIdenticallyZero, "binary cubic vanishes identically");
  return *r;
}

/// {1} when q is not 1 mod 3, otherwise {1, w, w^2}; ascending.
template <class F>
std::vector<typename F::Element> cube_roots_of_unity(const F& f) {
  using E = typename F::Element;
  const mpz_class q = f.order();
  std::vector<E> out{f.one()};
  if (mpz_fdiv_ui(q.get_mpz_t(), 3) != 1) return out;
  const mpz_class e = (q - 1) / 3;
  for (std::uint64_t i = 2;; ++i) {
    const E w = f.pow(f.from_index(i), e);
    if (w != f.one()) {
      out.push_back(w);
      out.push_back(f.mul(w, w));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cubsurf::field
