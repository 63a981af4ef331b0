#include "cubsurf/field/gf.hpp"

#include <string>

#include "cubsurf/error.hpp"
#include "cubsurf/field/modular.hpp"

namespace cubsurf::field {

GFPtr GF::make(std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw Error(ErrorKind::kNotPrime, std::to_string(p) + " is not prime");
  if (k > ExtField::kMaxDegree) throw Error(ErrorKind::kDegreeTooLarge, "degree " + std::to_string(k) + " exceeds 24");
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorKind::kBudgetExceeded, "table field limited to 2^22 elements");
  }
  return from_ext(ExtField::make(p, k));
}

GFPtr GF::from_ext(const ExtField& ext) {
  if (ext.order() > kMaxOrder) throw Error(ErrorKind::kBudgetExceeded, "table field limited to 2^22 elements");
  return std::make_shared<const GF>(ext);
}

GF::GF(ExtField ext) : ext_(std::move(ext)), p_(ext_.characteristic()), k_(ext_.degree()) {
  q_ = static_cast<std::uint32_t>(ext_.order().get_ui());
  const std::uint32_t n = q_ - 1;

  neg_.resize(q_);
  for (std::uint32_t c = 0; c < q_; ++c) {
    std::uint32_t out = 0;
    std::uint32_t place = 1;
    std::uint32_t rest = c;
    for (unsigned i = 0; i < k_; ++i) {
      const auto d = static_cast<std::uint32_t>(rest % p_);
      rest /= static_cast<std::uint32_t>(p_);
      out += (d == 0 ? 0 : static_cast<std::uint32_t>(p_) - d) * place;
      place *= static_cast<std::uint32_t>(p_);
    }
    neg_[c] = out;
  }

  log_.assign(q_, 0);
  exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  if (n == 1) {  // F_2
    exp_[0] = exp_[1] = exp_[2] = 1;
    return;
  }
  const std::vector<std::uint64_t> factors = prime_factors(n);
  for (std::uint32_t cand = 2; cand < q_; ++cand) {
    const FieldElement g = ext_.from_index(cand);
    bool primitive = true;
    for (std::uint64_t r : factors) {
      FieldElement t = ext_.pow(g, mpz_class(static_cast<unsigned long>(n / r)));
      if (t == ext_.one()) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    FieldElement cur = ext_.one();
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t code = encode(cur).v;
      exp_[i] = code;
      log_[code] = i;
      cur = ext_.mul(cur, g);
    }
    break;
  }
  for (std::uint32_t i = n; i < exp_.size(); ++i) exp_[i] = exp_[i - n];
}

Elem GF::from_int(std::int64_t x) const {
  const auto pp = static_cast<std::int64_t>(p_);
  std::int64_t r = x % pp;
  if (r < 0) r += pp;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem GF::add(Elem a, Elem b) const {
  if (p_ == 2) return Elem{a.v ^ b.v};
  if (k_ == 1) {
    const std::uint32_t s = a.v + b.v;
    return Elem{s >= q_ ? s - q_ : s};
  }
  if (a.v == 0) return b;
  if (b.v == 0) return a;
  // a + b = a (1 + b/a)
  const std::uint32_t la = log_[a.v];
  const std::uint32_t lb = log_[b.v];
  const std::uint32_t ratio = exp_[lb + (q_ - 1) - la];
  const Elem s = plus_one(ratio);
  if (s.v == 0) return s;
  return Elem{exp_[log_[s.v] + la]};
}

Elem GF::inv(Elem a) const {
  if (a.v == 0) throw Error(ErrorKind::kInvalidArgument, "inverse of zero");
  return Elem{exp_[(q_ - 1 - log_[a.v]) % (q_ - 1)]};
}

Elem GF::pow(Elem a, const mpz_class& e) const {
  if (a.v == 0) {
    if (e == 0) return one();
    if (e < 0) throw Error(ErrorKind::kInvalidArgument, "inverse of zero");
    return a;
  }
  mpz_class r = (mpz_class(log_[a.v]) * e) % (q_ - 1);
  if (r < 0) r += q_ - 1;
  return Elem{exp_[r.get_ui()]};
}

Elem GF::pow_u(Elem a, std::uint64_t e) const {
  if (a.v == 0) return e == 0 ? one() : a;
  const std::uint64_t r = static_cast<std::uint64_t>(log_[a.v]) * (e % (q_ - 1)) % (q_ - 1);
  return Elem{exp_[r]};
}

FieldElement GF::decode(Elem a) const { return ext_.from_index(a.v); }

Elem GF::encode(const FieldElement& x) const {
  std::uint32_t code = 0;
  for (std::size_t i = x.coeffs.size(); i-- > 0;) {
    code = code * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(x.coeffs[i]);
  }
  return Elem{code};
}

Elem GF::element_from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return from_int(j.get<std::int64_t>());
  return encode(ext_.from_coeffs(j.get<std::vector<std::uint64_t>>()));
}

std::vector<Elem> GF::elements() const {
  std::vector<Elem> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = Elem{i};
  return out;
}

std::vector<Elem> embedding(const GF& small, const GF& big) {
  if (small.characteristic() != big.characteristic() || big.degree() % small.degree() != 0) {
    throw Error(ErrorKind::kInvalidArgument, "no embedding between these fields");
  }
  const std::vector<std::uint64_t>& m = small.ext().modulus();
  // Image of the class of x: a root of the small modulus inside the big field.
  Elem root{0};
  bool found = false;
  for (Elem z : big.elements()) {
    Elem acc = big.zero();
    for (std::size_t i = m.size(); i-- > 0;) {
      acc = big.add(big.mul(acc, z), big.from_int(static_cast<std::int64_t>(m[i])));
    }
    if (big.is_zero(acc)) {
      root = z;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::kInvalidArgument, "modulus has no root in the larger field");
  std::vector<Elem> out(small.size());
  for (std::uint32_t c = 0; c < small.size(); ++c) {
    const FieldElement x = small.decode(Elem{c});
    Elem acc = big.zero();
    for (std::size_t i = x.coeffs.size(); i-- > 0;) {
      acc = big.add(big.mul(acc, root), big.from_int(static_cast<std::int64_t>(x.coeffs[i])));
    }
    out[c] = acc;
  }
  return out;
}

}  // namespace cubsurf::field
