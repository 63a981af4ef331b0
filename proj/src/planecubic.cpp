#include "cubsurf/planecubic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cubsurf/error.hpp"
#include "cubsurf/field/modular.hpp"

namespace cubsurf {
namespace {

using V3 = std::array<Elem, 3>;

int rank2(const GF& f, const V3& a, const V3& b) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (!f.is_zero(f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])))) return 2;
    }
  }
  return 1;
}

Elem dot3(const GF& f, const V3& a, const V3& b) {
  return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

V3 comb3(const GF& f, Elem s, const V3& u, Elem t, const V3& v) {
  return {f.add(f.mul(s, u[0]), f.mul(t, v[0])), f.add(f.mul(s, u[1]), f.mul(t, v[1])),
          f.add(f.mul(s, u[2]), f.mul(t, v[2]))};
}

int roots_mod_p(std::uint64_t p, std::uint64_t a, std::uint64_t b) {  // a x^3 - b
  int count = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t v = field::mulmod(a % p, field::powmod(x, 3, p), p);
    if (v == b % p) ++count;
  }
  return count;
}

}  // namespace

PlaneCubic::PlaneCubic(std::uint64_t p) : p_(p) {
  if (p == 3) throw Error(ErrorKind::kCharacteristicThree, "x^3 + y^3 + z^3 is singular in characteristic 3");
  field_ = GF::make(p, 1);
  const GF& f = *field_;
  origin_ = normalize({f.one(), f.neg(f.one()), f.zero()});
  for (Elem y : f.elements()) {
    for (Elem z : f.elements()) {
      if (on_curve({f.one(), y, z})) points_.push_back(CurvePoint{{f.one(), y, z}});
    }
  }
  for (Elem z : f.elements()) {
    if (on_curve({f.zero(), f.one(), z})) points_.push_back(CurvePoint{{f.zero(), f.one(), z}});
  }
  if (on_curve({f.zero(), f.zero(), f.one()})) points_.push_back(CurvePoint{{f.zero(), f.zero(), f.one()}});
  std::sort(points_.begin(), points_.end());
}

bool PlaneCubic::on_curve(const V3& v) const {
  const GF& f = *field_;
  Elem s = f.zero();
  for (Elem c : v) s = f.add(s, f.mul(f.mul(c, c), c));
  return f.is_zero(s);
}

CurvePoint PlaneCubic::normalize(const V3& v) const {
  const GF& f = *field_;
  for (int i = 0; i < 3; ++i) {
    if (f.is_zero(v[i])) continue;
    const Elem inv = f.inv(v[i]);
    return CurvePoint{{f.mul(v[0], inv), f.mul(v[1], inv), f.mul(v[2], inv)}};
  }
  throw Error(ErrorKind::kInvalidArgument, "zero vector is not a point");
}

CurvePoint PlaneCubic::reduce(const mpz_class& x, const mpz_class& y, const mpz_class& z) const {
  const mpz_class pm(static_cast<unsigned long>(p_));
  auto r = [&](const mpz_class& a) {
    mpz_class m;
    mpz_fdiv_r(m.get_mpz_t(), a.get_mpz_t(), pm.get_mpz_t());
    return field_->from_int(static_cast<std::int64_t>(m.get_ui()));
  };
  return normalize({r(x), r(y), r(z)});
}

V3 PlaneCubic::gradient(const V3& v) const {
  const GF& f = *field_;
  const Elem three = f.from_int(3);
  return {f.mul(three, f.mul(v[0], v[0])), f.mul(three, f.mul(v[1], v[1])), f.mul(three, f.mul(v[2], v[2]))};
}

CurvePoint PlaneCubic::third_point(const CurvePoint& p, const CurvePoint& q) const {
  const GF& f = *field_;
  if (p != q) {
    // C(sP + tQ) = st(a s + b t).
    const Elem a = dot3(f, gradient(p.x), q.x);
    const Elem b = dot3(f, gradient(q.x), p.x);
    return normalize(comb3(f, b, p.x, f.neg(a), q.x));
  }
  const V3 n = gradient(p.x);
  int j = 0;
  while (f.is_zero(n[j])) ++j;
  for (int k = 0; k < 3; ++k) {
    if (k == j) continue;
    V3 v{f.zero(), f.zero(), f.zero()};
    v[k] = n[j];
    v[j] = f.neg(n[k]);
    if (rank2(f, p.x, v) < 2) continue;
    // C(sP + tV) = t^2 (b s + c t) on the tangent line.
    const Elem b = dot3(f, gradient(v), p.x);
    Elem c = f.zero();
    for (Elem e : v) c = f.add(c, f.mul(f.mul(e, e), e));
    return normalize(comb3(f, c, p.x, f.neg(b), v));
  }
  throw Error(ErrorKind::kInvalidArgument, "no tangent direction");
}

CurvePoint PlaneCubic::add(const CurvePoint& p, const CurvePoint& q) const { return third_point(third_point(p, q), origin_); }

CurvePoint PlaneCubic::neg(const CurvePoint& p) const { return third_point(p, origin_); }

CurvePoint PlaneCubic::mul(const CurvePoint& p, long n) const {
  CurvePoint base = n < 0 ? neg(p) : p;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  CurvePoint acc = origin_;
  while (k != 0) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

std::uint64_t PlaneCubic::order(const CurvePoint& p) const {
  std::uint64_t k = 1;
  CurvePoint acc = p;
  while (acc != origin_) {
    acc = add(acc, p);
    ++k;
  }
  return k;
}

std::vector<std::uint64_t> PlaneCubic::group_structure() const {
  const std::uint64_t n = points_.size();
  std::uint64_t exponent = 1;
  for (const CurvePoint& pt : points_) exponent = std::lcm(exponent, order(pt));
  std::vector<std::uint64_t> out;
  if (n / exponent > 1) out.push_back(n / exponent);
  if (exponent > 1) out.push_back(exponent);
  return out;
}

nlohmann::json PlaneCubic::to_json(const CurvePoint& p) const {
  nlohmann::json j = nlohmann::json::array();
  for (Elem e : p.x) j.push_back(field_->index_of(e));
  return j;
}

PicQuotient::PicQuotient(PlaneCubic curve, int n) : curve_(std::move(curve)), n_(n) {
  const PlaneCubic& c = curve_;
  std::set<CurvePoint> multiples;
  for (const CurvePoint& p : c.points()) multiples.insert(c.mul(p, n));
  auto same_class = [&](const CurvePoint& a, const CurvePoint& b) {
    return multiples.count(c.add(a, c.neg(b))) == 1;
  };
  // Greedy basis: each new element outside the span of the previous ones.
  std::vector<CurvePoint> span{c.origin()};
  for (const CurvePoint& p : c.points()) {
    const bool inside = std::any_of(span.begin(), span.end(), [&](const CurvePoint& s) { return same_class(p, s); });
    if (inside) continue;
    basis_.push_back(p);
    std::vector<CurvePoint> bigger;
    for (const CurvePoint& s : span) {
      CurvePoint acc = s;
      for (int a = 0; a < n; ++a) {
        bigger.push_back(acc);
        acc = c.add(acc, p);
      }
    }
    span = std::move(bigger);
  }
  dim_ = static_cast<int>(basis_.size());
  // span[i] has coordinates given by the base-n digits of i, last basis
  // element most significant in construction order; recover them directly.
  std::vector<std::vector<int>> span_coords;
  {
    std::vector<std::vector<int>> cur{std::vector<int>(dim_, 0)};
    for (int b = 0; b < dim_; ++b) {
      std::vector<std::vector<int>> next;
      for (const auto& v : cur) {
        for (int a = 0; a < n; ++a) {
          auto w = v;
          w[b] = a;
          next.push_back(w);
        }
      }
      cur = std::move(next);
    }
    span_coords = std::move(cur);
  }
  reps_.assign(span.size(), c.origin());
  std::vector<bool> hit(span.size(), false);
  for (const CurvePoint& p : c.points()) {
    for (std::size_t i = 0; i < span.size(); ++i) {
      if (!same_class(p, span[i])) continue;
      int idx = 0;
      for (int b = dim_ - 1; b >= 0; --b) idx = idx * n + span_coords[i][b];
      index_[p] = idx;
      if (!hit[idx]) {
        hit[idx] = true;
        reps_[idx] = p;
      }
      break;
    }
  }
}

int PicQuotient::dim_from_structure() const {
  int d = 0;
  for (std::uint64_t f : curve_.group_structure()) d += f % static_cast<std::uint64_t>(n_) == 0 ? 1 : 0;
  return d;
}

int PicQuotient::class_index(const CurvePoint& p) const {
  const auto it = index_.find(p);
  if (it == index_.end()) throw Error(ErrorKind::kPointNotOnSurface, "point is not on the curve");
  return it->second;
}

std::vector<int> PicQuotient::coords(const CurvePoint& p) const {
  int idx = class_index(p);
  std::vector<int> out(dim_);
  for (int b = 0; b < dim_; ++b) {
    out[b] = idx % n_;
    idx /= n_;
  }
  return out;
}

int PicQuotient::class_count() const {
  int c = 1;
  for (int i = 0; i < dim_; ++i) c *= n_;
  return c;
}

bool PicQuotient::every_class_represented() const {
  std::set<int> seen;
  for (const auto& [p, idx] : index_) seen.insert(idx);
  return static_cast<int>(seen.size()) == class_count() && index_.size() == curve_.points().size();
}

nlohmann::json PicQuotient::to_json() const {
  nlohmann::json j;
  j["p"] = curve_.p();
  j["n"] = n_;
  j["dim"] = dim_;
  j["curve_points"] = curve_.points().size();
  j["group_structure"] = curve_.group_structure();
  nlohmann::json reps = nlohmann::json::array();
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    reps.push_back({{"class", i}, {"point", curve_.to_json(reps_[i])}});
  }
  j["representatives"] = reps;
  j["every_class_represented"] = every_class_represented();
  return j;
}

PrimeCondition prime_condition(std::uint64_t p) {
  if (p == 2 || p == 3) throw Error(ErrorKind::kInvalidArgument, "prime condition needs p > 3");
  if (!field::is_prime(p)) throw Error(ErrorKind::kNotPrime, "modulus is not prime");
  PrimeCondition c;
  c.cond_a = p % 3 == 1;
  c.cond_b = p % 3 == 2 || field::powmod(2, (p - 1) / 3, p) == 1;
  c.t3_minus_2_splits = roots_mod_p(p, 1, 2) == 3;
  return c;
}

TwoDivision two_division_check(std::uint64_t p) {
  if (p == 2 || p == 3) throw Error(ErrorKind::kHypothesisFailed, "2-division check needs p prime to 6");
  const PrimeCondition c = prime_condition(p);
  TwoDivision t;
  t.splits = roots_mod_p(p, 4, 27) == 3;
  t.conditions = c.cond_a && c.cond_b;
  return t;
}

PicQuotient pic_mod(std::uint64_t p, int n) {
  if (n != 2 && n != 3) throw Error(ErrorKind::kInvalidArgument, "only n = 2 and n = 3 are supported");
  if (p == 2 || p == 3 || p % 3 != 1) throw Error(ErrorKind::kHypothesisFailed, "p = 1 mod 3 fails");
  if (n == 2 && field::powmod(2, (p - 1) / 3, p) != 1) {
    throw Error(ErrorKind::kHypothesisFailed, "2 is not a cube mod p");
  }
  return PicQuotient(PlaneCubic(p), n);
}

std::uint64_t weierstrass_point_count(std::uint64_t p) {
  if (!field::is_prime(p)) throw Error(ErrorKind::kNotPrime, "modulus is not prime");
  std::uint64_t count = 1;  // point at infinity
  const std::uint64_t seven = 7 % p;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t rhs = field::submod(field::powmod(x, 3, p), seven, p);
    for (std::uint64_t y = 0; y < p; ++y) {
      if (field::addmod(field::mulmod(y, y, p), y, p) == rhs) ++count;
    }
  }
  return count;
}

namespace {

struct AffPt {
  bool inf = true;
  std::uint64_t x = 0, y = 0;
  friend bool operator==(const AffPt&, const AffPt&) = default;
};

// y^2 + y = x^3 - 7
AffPt w_add(const AffPt& a, const AffPt& b, std::uint64_t p) {
  using field::addmod;
  using field::mulmod;
  using field::submod;
  if (a.inf) return b;
  if (b.inf) return a;
  auto inv = [&](std::uint64_t v) { return field::powmod(v, p - 2, p); };
  std::uint64_t lambda;
  if (a.x == b.x) {
    const std::uint64_t den = addmod(mulmod(2, a.y, p), 1, p);
    if (b.y != a.y || den == 0) return {};
    lambda = mulmod(mulmod(3 % p, mulmod(a.x, a.x, p), p), inv(den), p);
  } else {
    lambda = mulmod(submod(b.y, a.y, p), inv(submod(b.x, a.x, p)), p);
  }
  const std::uint64_t x3 = submod(submod(mulmod(lambda, lambda, p), a.x, p), b.x, p);
  const std::uint64_t nu = submod(a.y, mulmod(lambda, a.x, p), p);
  const std::uint64_t y3 = submod(submod(submod(0, mulmod(lambda, x3, p), p), nu, p), 1 % p, p);
  return {false, x3, y3};
}

}  // namespace

std::vector<CurvePoint> curve_points(std::uint64_t p) { return PlaneCubic(p).points(); }

std::vector<std::uint64_t> weierstrass_group_structure(std::uint64_t p) {
  if (!field::is_prime(p)) throw Error(ErrorKind::kNotPrime, "modulus is not prime");
  if (p == 3) throw Error(ErrorKind::kCharacteristicThree, "the model is singular in characteristic 3");
  std::vector<AffPt> pts{AffPt{}};
  const std::uint64_t seven = 7 % p;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t rhs = field::submod(field::powmod(x, 3, p), seven, p);
    for (std::uint64_t y = 0; y < p; ++y) {
      if (field::addmod(field::mulmod(y, y, p), y, p) == rhs) pts.push_back({false, x, y});
    }
  }
  std::uint64_t exponent = 1;
  for (const AffPt& pt : pts) {
    std::uint64_t k = 1;
    AffPt acc = pt;
    while (!acc.inf) {
      acc = w_add(acc, pt, p);
      ++k;
    }
    exponent = std::lcm(exponent, k);
  }
  const std::uint64_t n = pts.size();
  std::vector<std::uint64_t> out;
  if (n / exponent > 1) out.push_back(n / exponent);
  if (exponent > 1) out.push_back(exponent);
  return out;
}

WeierstrassCheck weierstrass_check(std::uint64_t p) {
  const PlaneCubic c(p);
  WeierstrassCheck w;
  w.curve_points = c.points().size();
  w.model_points = weierstrass_point_count(p);
  w.curve_structure = c.group_structure();
  w.model_structure = weierstrass_group_structure(p);
  return w;
}

}  // namespace cubsurf
