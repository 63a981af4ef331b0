#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace cubsurf::field {

/// Univariate polynomials over a field F, low-degree first. An empty vector
/// is the zero polynomial; every function returns trimmed results.
template <class F>
using Poly = std::vector<typename F::Element>;

template <class F>
void poly_trim(const F& f, Poly<F>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

template <class F>
int poly_degree(const Poly<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
typename F::Element poly_eval(const F& f, const Poly<F>& a, typename F::Element x) {
  auto acc = f.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

template <class F>
Poly<F> poly_add(const F& f, Poly<F> a, const Poly<F>& b) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.add(a[i], b[i]);
  poly_trim(f, a);
  return a;
}

template <class F>
Poly<F> poly_sub(const F& f, Poly<F> a, const Poly<F>& b) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  poly_trim(f, a);
  return a;
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  poly_trim(f, r);
  return r;
}

/// Quotient and remainder; `b` must be nonzero.
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& f, Poly<F> a, const Poly<F>& b) {
  poly_trim(f, a);
  if (a.size() < b.size()) return {Poly<F>{}, std::move(a)};
  Poly<F> q(a.size() - b.size() + 1, f.zero());
  const auto lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const auto c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    a.pop_back();  // leading term cancels exactly
    poly_trim(f, a);
  }
  poly_trim(f, q);
  return {std::move(q), std::move(a)};
}

template <class F>
Poly<F> poly_rem(const F& f, Poly<F> a, const Poly<F>& b) {
  return poly_divmod(f, std::move(a), b).second;
}

template <class F>
Poly<F> poly_monic(const F& f, Poly<F> a) {
  if (a.empty()) return a;
  const auto c = f.inv(a.back());
  for (auto& x : a) x = f.mul(x, c);
  return a;
}

/// Monic gcd (zero if both inputs are zero).
template <class F>
Poly<F> poly_gcd(const F& f, Poly<F> a, Poly<F> b) {
  poly_trim(f, a);
  poly_trim(f, b);
  while (!b.empty()) {
    Poly<F> r = poly_rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(f, std::move(a));
}

/// base^e mod m for e >= 0.
template <class F>
Poly<F> poly_powmod(const F& f, Poly<F> base, const mpz_class& e, const Poly<F>& m) {
  Poly<F> result = poly_rem(f, Poly<F>{f.one()}, m);
  base = poly_rem(f, std::move(base), m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = poly_rem(f, poly_mul(f, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) result = poly_rem(f, poly_mul(f, result, base), m);
  }
  return result;
}

}  // namespace cubsurf::field
