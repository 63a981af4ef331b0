#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <vector>

#include "json.hpp"

namespace cubsurf::field {

/// Element of F_{p^k} in polynomial basis: coefficients c_0..c_{k-1},
/// least-degree first.
struct FieldElement {
  std::vector<std::uint64_t> coeffs;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement& a, const FieldElement& b) {
    // Compare as base-p numbers (highest coefficient most significant).
    for (std::size_t i = a.coeffs.size(); i-- > 0;) {
      if (auto c = a.coeffs[i] <=> b.coeffs[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }
};

/// F_{p^k} = F_p[x]/(m(x)) for a word-size prime p < 2^61 and 1 <= k <= 24.
///
/// The modulus is the least monic irreducible of degree k when candidates are
/// ordered as base-p numbers c_{k-1} ... c_1 c_0, so the same (p, k) always
/// yields the same field presentation.
class ExtField {
 public:
  using Element = FieldElement;

  static constexpr unsigned kMaxDegree = 24;
  static constexpr std::uint64_t kMaxCharacteristic = std::uint64_t{1} << 61;

  /// Throws Error(kNotPrime) / Error(kDegreeTooLarge).
  static ExtField make(std::uint64_t p, unsigned k);

  /// Uses an explicit modulus (monic, degree k, low-degree first); the
  /// modulus is checked for irreducibility.
  static ExtField with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  mpz_class order() const;

  Element zero() const { return Element{std::vector<std::uint64_t>(k_, 0)}; }
  Element one() const { return from_int(1); }
  Element from_int(std::int64_t n) const;
  /// Base-p digits of `index` become the coefficients c_0, c_1, ...
  Element from_index(std::uint64_t index) const;
  Element from_coeffs(std::vector<std::uint64_t> coeffs) const;
  /// The class of x; a generator of the field over F_p.
  Element generator() const;

  bool is_zero(const Element& a) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  Element pow(const Element& a, const mpz_class& e) const;
  Element frobenius(const Element& a) const { return pow(a, mpz_class(static_cast<unsigned long>(p_))); }

  nlohmann::json to_json() const;
  static ExtField from_json(const nlohmann::json& j);
  nlohmann::json element_to_json(const Element& a) const;

 private:
  ExtField(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus)
      : p_(p), k_(k), modulus_(std::move(modulus)) {}

  std::uint64_t p_;
  unsigned k_;
  std::vector<std::uint64_t> modulus_;  // monic, size k + 1
};

/// Rabin's test: x^{p^k} = x mod f and gcd(x^{p^{k/r}} - x, f) = 1 for every
/// prime r | k. `f` is monic over F_p, low-degree first.
bool is_irreducible_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p);

}  // namespace cubsurf::field
