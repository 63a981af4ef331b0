#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "cubsurf/field/ext_field.hpp"
#include "json.hpp"

namespace cubsurf::field {

/// Element of a table field: the base-p code sum c_i p^i of its coefficient
/// vector, so code order agrees with FieldElement order.
struct Elem {
  std::uint32_t v = 0;

  friend bool operator==(Elem, Elem) = default;
  friend auto operator<=>(Elem, Elem) = default;
};

class GF;
using GFPtr = std::shared_ptr<const GF>;

/// Log/antilog table field for q <= 2^22. Same presentation as ExtField::make,
/// but every operation is a handful of table lookups. This is the field used
/// by all exhaustive geometry.
class GF {
 public:
  using Element = Elem;

  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

  /// Throws NotPrime, DegreeTooLarge, or BudgetExceeded when q > 2^22.
  static GFPtr make(std::uint64_t p, unsigned k);
  static GFPtr from_ext(const ExtField& ext);
  static GFPtr from_json(const nlohmann::json& j) { return from_ext(ExtField::from_json(j)); }

  const ExtField& ext() const { return ext_; }
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t size() const { return q_; }
  mpz_class order() const { return mpz_class(static_cast<unsigned long>(q_)); }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem from_int(std::int64_t n) const;
  Elem from_index(std::uint64_t i) const { return Elem{static_cast<std::uint32_t>(i % q_)}; }
  std::uint32_t index_of(Elem a) const { return a.v; }
  /// Primitive element g; log/exp are relative to g.
  Elem primitive() const { return Elem{exp_[1]}; }
  std::uint32_t log(Elem a) const { return log_[a.v]; }
  Elem exp(std::uint64_t i) const { return Elem{exp_[i % (q_ - 1)]}; }

  bool is_zero(Elem a) const { return a.v == 0; }
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return Elem{neg_[a.v]}; }
  Elem mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return Elem{0};
    return Elem{exp_[log_[a.v] + log_[b.v]]};
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, const mpz_class& e) const;
  Elem pow_u(Elem a, std::uint64_t e) const;

  FieldElement decode(Elem a) const;
  Elem encode(const FieldElement& x) const;

  nlohmann::json to_json() const { return ext_.to_json(); }
  nlohmann::json element_to_json(Elem a) const { return decode(a).coeffs; }
  Elem element_from_json(const nlohmann::json& j) const;

  /// All elements in code order.
  std::vector<Elem> elements() const;

  explicit GF(ExtField ext);

 private:
  Elem plus_one(std::uint32_t code) const {
    const std::uint32_t low = code % static_cast<std::uint32_t>(p_);
    return Elem{low + 1 == p_ ? code - low : code + 1};
  }

  ExtField ext_;
  std::uint64_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> neg_;
};

/// Map from codes of `small` to codes of `big` realizing a field embedding.
/// Requires equal characteristic and deg(small) | deg(big).
std::vector<Elem> embedding(const GF& small, const GF& big);

}  // namespace cubsurf::field
