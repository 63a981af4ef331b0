#include "cubsurf/field/ext_field.hpp"

#include <algorithm>
#include <string>

#include "cubsurf/error.hpp"
#include "cubsurf/field/modular.hpp"

namespace cubsurf::field {
namespace {

using Poly = std::vector<std::uint64_t>;  // low-degree first, trimmed

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = submod(a[i], b[i], p);
  trim(a);
  return a;
}

// Remainder of a modulo f; f trimmed and nonzero.
Poly poly_rem(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = powmod(f.back(), p - 2, p);
  while (a.size() > df) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = submod(a[shift + i], mulmod(c, f[i], p), p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
  }
  return poly_rem(std::move(r), f, p);
}

Poly poly_powmod_u64(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result = poly_rem(Poly{1}, f, p);
  base = poly_rem(std::move(base), f, p);
  while (e != 0) {
    if (e & 1U) result = poly_mulmod(result, base, f, p);
    e >>= 1U;
    if (e != 0) base = poly_mulmod(base, base, f, p);
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^{p^j} mod f for j = 0..k.
std::vector<Poly> frobenius_powers(const Poly& f, unsigned k, std::uint64_t p) {
  std::vector<Poly> out;
  out.push_back(poly_rem(Poly{0, 1}, f, p));
  for (unsigned j = 1; j <= k; ++j) out.push_back(poly_powmod_u64(out.back(), p, f, p));
  return out;
}

bool binomial_may_be_irreducible(std::uint64_t p, unsigned k) {
  for (std::uint64_t r : prime_factors(k)) {
    if ((p - 1) % r != 0) return false;
  }
  return k % 4 != 0 || p % 4 == 1;
}

Poly fit(const std::vector<std::uint64_t>& coeffs, unsigned k, std::uint64_t p) {
  Poly out(k, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i < k) {
      out[i] = addmod(out[i], coeffs[i] % p, p);
    }
  }
  return out;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint64_t>& f_in, std::uint64_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const auto k = static_cast<unsigned>(f.size() - 1);
  if (k == 1) return true;
  const std::vector<Poly> frob = frobenius_powers(f, k, p);
  const Poly x = poly_rem(Poly{0, 1}, f, p);
  if (poly_sub(frob[k], x, p).size() != 0) return false;
  for (std::uint64_t r : prime_factors(k)) {
    Poly g = poly_gcd(f, poly_sub(frob[k / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

ExtField ExtField::make(std::uint64_t p, unsigned k) {
  if (p >= kMaxCharacteristic) throw Error(ErrorKind::kInvalidArgument, "characteristic must be below 2^61");
  if (!is_prime(p)) throw Error(ErrorKind::kNotPrime, std::to_string(p) + " is not prime");
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "extension degree must be at least 1");
  if (k > kMaxDegree) throw Error(ErrorKind::kDegreeTooLarge, "degree " + std::to_string(k) + " exceeds 24");
  if (k == 1) return ExtField(p, 1, {0, 1});

  // Candidates are counted as base-p numbers c_{k-1}...c_0 over the low k
  // coefficients; c_0 = 0 is never irreducible for k >= 2.
  Poly digits(k, 0);
  const bool try_binomials = binomial_may_be_irreducible(p, k);
  if (!try_binomials) digits[1] = 1;
  for (;;) {
    if (digits[0] != 0) {
      Poly f = digits;
      f.push_back(1);
      if (is_irreducible_mod_p(f, p)) return ExtField(p, k, std::move(f));
    }
    unsigned i = 0;
    while (i < k && ++digits[i] == p) digits[i++] = 0;
    if (i == k) break;
  }
  throw Error(ErrorKind::kInvalidArgument, "no irreducible polynomial found");  // unreachable
}

ExtField ExtField::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (p >= kMaxCharacteristic) throw Error(ErrorKind::kInvalidArgument, "characteristic must be below 2^61");
  if (!is_prime(p)) throw Error(ErrorKind::kNotPrime, std::to_string(p) + " is not prime");
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "modulus must be monic of degree >= 1");
  }
  const auto k = static_cast<unsigned>(modulus.size() - 1);
  if (k > kMaxDegree) throw Error(ErrorKind::kDegreeTooLarge, "degree " + std::to_string(k) + " exceeds 24");
  if (!is_irreducible_mod_p(modulus, p)) throw Error(ErrorKind::kInvalidArgument, "modulus is reducible");
  return ExtField(p, k, std::move(modulus));
}

mpz_class ExtField::order() const {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p_, k_);
  return q;
}

ExtField::Element ExtField::from_int(std::int64_t n) const {
  Element e = zero();
  const auto pp = static_cast<std::int64_t>(p_);
  std::int64_t r = n % pp;
  if (r < 0) r += pp;
  e.coeffs[0] = static_cast<std::uint64_t>(r);
  return e;
}

ExtField::Element ExtField::from_index(std::uint64_t index) const {
  Element e = zero();
  for (unsigned i = 0; i < k_ && index != 0; ++i) {
    e.coeffs[i] = index % p_;
    index /= p_;
  }
  return e;
}

ExtField::Element ExtField::from_coeffs(std::vector<std::uint64_t> coeffs) const {
  if (coeffs.size() > k_) {
    Poly r = poly_rem(std::move(coeffs), modulus_, p_);
    return Element{fit(r, k_, p_)};
  }
  return Element{fit(coeffs, k_, p_)};
}

ExtField::Element ExtField::generator() const {
  return Element{fit(poly_rem(Poly{0, 1}, modulus_, p_), k_, p_)};
}

bool ExtField::is_zero(const Element& a) const {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](std::uint64_t c) { return c == 0; });
}

ExtField::Element ExtField::add(const Element& a, const Element& b) const {
  Element r = zero();
  for (unsigned i = 0; i < k_; ++i) r.coeffs[i] = addmod(a.coeffs[i], b.coeffs[i], p_);
  return r;
}

ExtField::Element ExtField::sub(const Element& a, const Element& b) const {
  Element r = zero();
  for (unsigned i = 0; i < k_; ++i) r.coeffs[i] = submod(a.coeffs[i], b.coeffs[i], p_);
  return r;
}

ExtField::Element ExtField::neg(const Element& a) const {
  Element r = zero();
  for (unsigned i = 0; i < k_; ++i) r.coeffs[i] = submod(0, a.coeffs[i], p_);
  return r;
}

ExtField::Element ExtField::mul(const Element& a, const Element& b) const {
  return Element{fit(poly_mulmod(a.coeffs, b.coeffs, modulus_, p_), k_, p_)};
}

ExtField::Element ExtField::inv(const Element& a) const {
  if (is_zero(a)) throw Error(ErrorKind::kInvalidArgument, "inverse of zero");
  // Extended Euclid on (modulus, a), tracking the coefficient of a.
  Poly r0 = modulus_;
  Poly r1 = a.coeffs;
  trim(r1);
  Poly s0;
  Poly s1{1};
  while (r1.size() > 1) {
    // One long division step sequence: q = r0 / r1.
    Poly q(r0.size() - r1.size() + 1, 0);
    Poly rem = r0;
    const std::uint64_t lead_inv = powmod(r1.back(), p_ - 2, p_);
    while (rem.size() >= r1.size()) {
      const std::uint64_t c = mulmod(rem.back(), lead_inv, p_);
      const std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        rem[shift + i] = submod(rem[shift + i], mulmod(c, r1[i], p_), p_);
      }
      trim(rem);
    }
    // s_new = s0 - q * s1 (no reduction needed; degrees stay below k)
    Poly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) {
        qs[i + j] = addmod(qs[i + j], mulmod(q[i], s1[j], p_), p_);
      }
    }
    trim(qs);
    Poly s_new = poly_sub(s0, qs, p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s_new);
  }
  const std::uint64_t c = powmod(r1[0], p_ - 2, p_);
  for (auto& x : s1) x = mulmod(x, c, p_);
  return Element{fit(poly_rem(std::move(s1), modulus_, p_), k_, p_)};
}

ExtField::Element ExtField::pow(const Element& a, const mpz_class& e) const {
  if (e < 0) return pow(inv(a), -e);
  Element result = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) result = mul(result, a);
  }
  return result;
}

nlohmann::json ExtField::to_json() const {
  return nlohmann::json{{"p", p_}, {"k", k_}, {"modulus", modulus_}};
}

ExtField ExtField::from_json(const nlohmann::json& j) {
  const auto p = j.at("p").get<std::uint64_t>();
  if (j.contains("modulus")) return with_modulus(p, j.at("modulus").get<std::vector<std::uint64_t>>());
  return make(p, j.value("k", 1U));
}

nlohmann::json ExtField::element_to_json(const Element& a) const { return a.coeffs; }

}  // namespace cubsurf::field
