#include "cubsurf/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cubsurf/error.hpp"
#include "cubsurf/field/modular.hpp"
#include "cubsurf/intmat.hpp"

namespace cubsurf {
namespace {

using I128 = __int128;

long mod_nonneg(const mpz_class& a, long p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p));
  return static_cast<long>(r.get_ui());
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t icbrt(std::int64_t n) {
  const bool neg = n < 0;
  const std::int64_t a = neg ? -n : n;
  auto r = static_cast<std::int64_t>(std::cbrt(static_cast<long double>(a)));
  while (r > 0 && static_cast<I128>(r) * r * r > a) --r;
  while (static_cast<I128>(r + 1) * (r + 1) * (r + 1) <= a) ++r;
  return neg ? -r : r;
}

IntPoint lin(const mpz_class& s, const IntPoint& a, const mpz_class& t, const IntPoint& b) {
  IntPoint r;
  for (int i = 0; i < 4; ++i) r[i] = s * a[i] + t * b[i];
  return r;
}

bool is_zero_vec(const IntPoint& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& c) { return c == 0; });
}

bool proportional(const IntPoint& a, const IntPoint& b) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (a[i] * b[j] != a[j] * b[i]) return false;
    }
  }
  return true;
}

bool is_square(const mpz_class& a, mpz_class& root) {
  if (a < 0) return false;
  root = sqrt(a);
  return root * root == a;
}

// Nullspace of a rows x 5 matrix mod p.
std::vector<std::array<long, 5>> nullspace_mod(std::vector<std::array<long, 5>> a, long p) {
  const auto up = static_cast<std::uint64_t>(p);
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = 0; col < 5 && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[row]);
    const auto inv = static_cast<long>(field::powmod(static_cast<std::uint64_t>(a[row][col]), up - 2, up));
    for (auto& e : a[row]) e = static_cast<long>(field::mulmod(static_cast<std::uint64_t>(e), inv, up));
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const long f = a[r][col];
      for (int c = 0; c < 5; ++c) {
        a[r][c] = static_cast<long>(field::submod(static_cast<std::uint64_t>(a[r][c]),
                                                  field::mulmod(static_cast<std::uint64_t>(f),
                                                                static_cast<std::uint64_t>(a[row][c]), up),
                                                  up));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<std::array<long, 5>> out;
  for (int free = 0; free < 5; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::array<long, 5> v{};
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - a[r][free]) % p;
    out.push_back(v);
  }
  return out;
}

// Row-reduced form of a basis, for comparing subspaces.
std::vector<std::array<long, 5>> rref_mod(std::vector<std::array<long, 5>> a, long p) {
  const auto up = static_cast<std::uint64_t>(p);
  std::size_t row = 0;
  for (int col = 0; col < 5 && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[row]);
    const auto inv = static_cast<long>(field::powmod(static_cast<std::uint64_t>(a[row][col]), up - 2, up));
    for (auto& e : a[row]) e = static_cast<long>(field::mulmod(static_cast<std::uint64_t>(e), inv, up));
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const long f = a[r][col];
      for (int c = 0; c < 5; ++c) {
        a[r][c] = static_cast<long>(field::submod(static_cast<std::uint64_t>(a[r][c]),
                                                  field::mulmod(static_cast<std::uint64_t>(f),
                                                                static_cast<std::uint64_t>(a[row][c]), up),
                                                  up));
      }
    }
    ++row;
  }
  return a;
}

}  // namespace

std::string family_name(Family f) { return f == Family::kS ? "S_M" : "S'_M"; }

Family parse_family(const std::string& s) {
  if (s == "S_M" || s == "S" || s == "SM") return Family::kS;
  if (s == "S'_M" || s == "S_prime" || s == "Sp" || s == "S'" || s == "SpM") return Family::kSPrime;
  throw Error(ErrorKind::kInvalidArgument, "unknown family '" + s + "'");
}

IntegerCubic family_form(Family f, long m) { return f == Family::kS ? family_s(m) : family_s_prime(m); }

IntPoint primitive(const IntPoint& v) {
  mpz_class g = 0;
  for (const auto& c : v) g = gcd(g, c);
  if (g == 0) throw Error(ErrorKind::kInvalidArgument, "zero vector is not a point");
  IntPoint r;
  for (int i = 0; i < 4; ++i) r[i] = v[i] / g;
  for (const auto& c : r) {
    if (c == 0) continue;
    if (c < 0) {
      for (auto& e : r) e = -e;
    }
    break;
  }
  return r;
}

bool same_projective_point(const IntPoint& a, const IntPoint& b) {
  if (is_zero_vec(a) || is_zero_vec(b)) return false;
  return proportional(a, b);
}

nlohmann::json to_json(const IntPoint& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : v) {
    if (c.fits_slong_p()) {
      j.push_back(c.get_si());
    } else {
      j.push_back(c.get_str());
    }
  }
  return j;
}

RationalSurfacePoint make_point(Family f, long m, const IntPoint& v) {
  const IntPoint x = primitive(v);
  if (family_form(f, m).eval(x) != 0) throw Error(ErrorKind::kPointNotOnSurface, "point is not on the surface");
  return {x, f, m};
}

std::vector<RationalSurfacePoint> point_search(Family f, long m, long h, const SearchOptions& opt) {
  if (h < 0 || h > 100000) throw Error(ErrorKind::kInvalidArgument, "height must lie in [0, 100000]");
  if (m < 1 || m > 1000000) throw Error(ErrorKind::kInvalidArgument, "M must lie in [1, 1000000]");
  const auto side = static_cast<std::uint64_t>(2 * h + 1);
  const std::uint64_t work = side * side * (side / static_cast<std::uint64_t>(m) + 1);
  if (work > opt.budget) throw Error(ErrorKind::kBudgetExceeded, "height box exceeds the search budget");

  std::vector<std::vector<long>> cube_roots(static_cast<std::size_t>(m));
  for (long r = 0; r < m; ++r) {
    const I128 c = static_cast<I128>(r) * r % m * r % m;
    cube_roots[static_cast<std::size_t>(c)].push_back(r);
  }
  std::vector<std::array<std::int64_t, 4>> found;
  auto emit = [&](std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w) {
    const std::int64_t c[4] = {x, y, z, w};
    for (std::int64_t e : c) {
      if (e == 0) continue;
      if (e < 0) return;
      break;
    }
    if (std::gcd(std::gcd(x, y), std::gcd(z, w)) != 1) return;
    found.push_back({x, y, z, w});
  };
  for (std::int64_t x = -h; x <= h; ++x) {
    const std::int64_t x3 = x * x * x;
    for (std::int64_t y = -h; y <= h; ++y) {
      const std::int64_t y3 = y * y * y;
      const std::int64_t target = ((-(x3 + y3)) % m + m) % m;
      for (long r : cube_roots[static_cast<std::size_t>(target)]) {
        std::int64_t z = -h + (((r + h) % m) + m) % m;
        for (; z <= h; z += m) {
          const std::int64_t s = x3 + y3 + z * z * z;
          if (f == Family::kS) {
            if (z == 0) {
              if (s != 0 || !opt.include_line_points) continue;
              for (std::int64_t w = -h; w <= h; ++w) emit(x, y, 0, w);
              continue;
            }
            const std::int64_t mz = m * z;
            if ((-s) % mz != 0) continue;
            const std::int64_t w2 = (-s) / mz;
            if (w2 < 0) continue;
            const std::int64_t w = isqrt(w2);
            if (w * w != w2 || w > h) continue;
            emit(x, y, z, w);
            if (w != 0) emit(x, y, z, -w);
          } else {
            if ((-s) % m != 0) continue;
            const std::int64_t w3 = (-s) / m;
            const std::int64_t w = icbrt(w3);
            if (static_cast<I128>(w) * w * w != w3 || w > h || w < -h) continue;
            emit(x, y, z, w);
          }
        }
      }
    }
  }
  auto height = [](const std::array<std::int64_t, 4>& a) {
    std::int64_t mx = 0;
    for (std::int64_t e : a) mx = std::max(mx, e < 0 ? -e : e);
    return mx;
  };
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    const auto ha = height(a);
    const auto hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<RationalSurfacePoint> out;
  out.reserve(found.size());
  for (const auto& a : found) {
    RationalSurfacePoint pt;
    for (int i = 0; i < 4; ++i) pt.x[i] = static_cast<long>(a[i]);
    pt.family = f;
    pt.m = m;
    out.push_back(std::move(pt));
  }
  return out;
}

nlohmann::json GoodLineParam::to_json() const { return {{"u", cubsurf::to_json(u)}, {"v", cubsurf::to_json(v)}}; }

GoodLineParam good_parametrization(const IntPoint& p, const IntPoint& q) {
  if (is_zero_vec(p) || is_zero_vec(q) || proportional(p, q)) {
    throw Error(ErrorKind::kEqualPoints, "a line needs two distinct points");
  }
  const IntMatrix a{{p.begin(), p.end()}, {q.begin(), q.end()}};
  const SmithForm s = smith_normal_form(a);
  // a = u^-1 d v^-1, so the first two rows of v^-1 span the saturation.
  const IntMatrix vinv = unimodular_inverse(s.v);
  const IntMatrix h = hermite_normal_form({vinv[0], vinv[1]});
  if (h.size() != 2) throw Error(ErrorKind::kEqualPoints, "a line needs two distinct points");
  GoodLineParam g;
  for (int i = 0; i < 4; ++i) {
    g.u[i] = h[0][i];
    g.v[i] = h[1][i];
  }
  return g;
}

std::optional<std::pair<mpz_class, mpz_class>> line_coordinates(const GoodLineParam& g, const IntPoint& p) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const mpz_class det = g.u[i] * g.v[j] - g.u[j] * g.v[i];
      if (det == 0) continue;
      mpq_class lam(p[i] * g.v[j] - p[j] * g.v[i], det);
      mpq_class mu(g.u[i] * p[j] - g.u[j] * p[i], det);
      lam.canonicalize();
      mu.canonicalize();
      for (int k = 0; k < 4; ++k) {
        if (lam * g.u[k] + mu * g.v[k] != p[k]) return std::nullopt;
      }
      const mpz_class l = lcm(lam.get_den(), mu.get_den());
      mpz_class a = lam.get_num() * (l / lam.get_den());
      mpz_class b = mu.get_num() * (l / mu.get_den());
      const mpz_class c = gcd(a, b);
      if (c != 0) {
        a /= c;
        b /= c;
      }
      return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

bool independent_mod(const GoodLineParam& g, long p) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (mod_nonneg(g.u[i] * g.v[j] - g.u[j] * g.v[i], p) != 0) return true;
    }
  }
  return false;
}

long ord_p(const mpz_class& a, long p) {
  if (a == 0) throw Error(ErrorKind::kInvalidArgument, "valuation of zero");
  mpz_class t = abs(a);
  long k = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p)) != 0) {
    t /= p;
    ++k;
  }
  return k;
}

long ord_p(const mpq_class& a, long p) { return ord_p(mpz_class(a.get_num()), p) - ord_p(mpz_class(a.get_den()), p); }

int NewtonPolygon::positive_slope_segments() const {
  return static_cast<int>(std::count_if(segments.begin(), segments.end(), [](const NewtonSegment& s) { return s.slope > 0; }));
}

nlohmann::json NewtonPolygon::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [i, a] : points) pts.push_back({i, a});
  j["points"] = pts;
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : segments) {
    segs.push_back({{"from", {s.x0, s.y0}}, {"to", {s.x1, s.y1}}, {"slope", s.slope.get_str()}, {"length", s.length()}});
  }
  j["segments"] = segs;
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& r : root_valuations) roots.push_back(r.get_str());
  j["root_valuations"] = roots;
  return j;
}

NewtonPolygon newton_polygon(const std::vector<mpq_class>& coeffs, long p) {
  if (p < 2 || !field::is_prime(static_cast<std::uint64_t>(p))) throw Error(ErrorKind::kNotPrime, "modulus is not prime");
  NewtonPolygon np;
  np.p = p;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) np.points.emplace_back(static_cast<long>(i), ord_p(coeffs[i], p));
  }
  if (np.points.empty()) throw Error(ErrorKind::kAllZero, "every coefficient is zero");
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : np.points) {
    // Drop the middle point while it lies on or above the chord.
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    NewtonSegment s;
    s.x0 = hull[i].first;
    s.y0 = hull[i].second;
    s.x1 = hull[i + 1].first;
    s.y1 = hull[i + 1].second;
    s.slope = mpq_class(s.y1 - s.y0, s.x1 - s.x0);
    s.slope.canonicalize();
    for (long k = 0; k < s.length(); ++k) np.root_valuations.push_back(-s.slope);
    np.segments.push_back(s);
  }
  std::sort(np.root_valuations.begin(), np.root_valuations.end());
  return np;
}

nlohmann::json ReductionClass::to_json(const PlaneCubic& c) const {
  if (bad) return "bad";
  return c.to_json(point);
}

std::string line_case_name(LineCase c) {
  switch (c) {
    case LineCase::kContained:
      return "contained";
    case LineCase::kAllBad:
      return "all_bad";
    case LineCase::kGoodReduction:
      return "good_reduction";
    case LineCase::kBadNewton:
      return "bad_reduction_newton";
    case LineCase::kBadPlaneZ0:
      return "bad_reduction_plane_z0";
    case LineCase::kBadCone:
      return "bad_reduction_cone";
  }
  return "unknown";
}

nlohmann::json LineRelationReport::to_json(const PlaneCubic& c) const {
  nlohmann::json j;
  nlohmann::json cyc = nlohmann::json::array();
  for (const auto& p : cycle) cyc.push_back(cubsurf::to_json(p));
  j["cycle"] = cyc;
  j["case"] = line_case_name(kind);
  j["param"] = param.to_json();
  nlohmann::json ph = nlohmann::json::array();
  for (const auto& r : phi) ph.push_back(r.to_json(c));
  j["phi"] = ph;
  j["psi_class"] = psi;
  if (newton) j["newton_polygon"] = newton->to_json();
  j["relation_holds"] = relation_holds;
  j["lemma_consistent"] = lemma_consistent;
  return j;
}

namespace {

PicQuotient checked_pic(Family f, long m, long p, int n) {
  if (p < 2 || !field::is_prime(static_cast<std::uint64_t>(p))) throw Error(ErrorKind::kBadPrime, "p is not prime");
  if (p == 3 || m % p != 0) throw Error(ErrorKind::kBadPrime, "p must divide M and differ from 3");
  const int expected = f == Family::kS ? 2 : 3;
  if (n != expected) throw Error(ErrorKind::kFamilyMismatch, family_name(f) + " maps to Pic^0/" + std::to_string(expected));
  return pic_mod(static_cast<std::uint64_t>(p), n);
}

}  // namespace

Reducer::Reducer(Family f, long m, long p) : Reducer(f, m, p, f == Family::kS ? 2 : 3) {}

Reducer::Reducer(Family f, long m, long p, int n)
    : family_(f), m_(m), p_(p), form_(family_form(f, m)), pic_(checked_pic(f, m, p, n)) {}

ReductionClass Reducer::phi(const IntPoint& x) const {
  if (form_.eval(x) != 0) throw Error(ErrorKind::kPointNotOnSurface, "point is not on the surface");
  const IntPoint v = primitive(x);
  ReductionClass r;
  if (mod_nonneg(v[0], p_) == 0 && mod_nonneg(v[1], p_) == 0 && mod_nonneg(v[2], p_) == 0) {
    r.bad = true;
    r.point = curve().origin();
    return r;
  }
  r.point = curve().reduce(v[0], v[1], v[2]);
  return r;
}

int Reducer::class_of(const ReductionClass& r) const { return r.bad ? 0 : pic_.class_index(r.point); }

int Reducer::psi(const IntPoint& x) const { return class_of(phi(x)); }

std::vector<int> Reducer::psi_coords(const IntPoint& x) const {
  const ReductionClass r = phi(x);
  if (r.bad) return std::vector<int>(static_cast<std::size_t>(pic_.dim()), 0);
  return pic_.coords(r.point);
}

LineRelationReport Reducer::verify_line_relation(const IntPoint& p_in, const IntPoint& d_in) const {
  const IntPoint p = primitive(p_in);
  if (form_.eval(p) != 0) throw Error(ErrorKind::kPointNotOnSurface, "point is not on the surface");
  if (is_zero_vec(d_in) || proportional(p, d_in)) throw Error(ErrorKind::kEqualPoints, "a line needs two distinct points");
  const IntPoint d = primitive(d_in);
  const PlaneCubic& c = curve();
  LineRelationReport rep;
  rep.param = good_parametrization(p, d);

  // F(sP + tD) = t (c1 s^2 + c2 s t + c3 t^2) since F(P) = 0.
  const auto co = form_.restrict_to_line(p, d);
  const mpz_class& c1 = co[1];
  const mpz_class& c2 = co[2];
  const mpz_class& c3 = co[3];
  if (c1 == 0 && c2 == 0 && c3 == 0) {
    rep.kind = LineCase::kContained;
    rep.cycle = {p, d, primitive(lin(1, p, 1, d))};
  } else {
    std::vector<std::pair<mpz_class, mpz_class>> roots;  // (s, t)
    if (c1 == 0) {
      roots.emplace_back(1, 0);
      if (c2 == 0) {
        roots.emplace_back(1, 0);
      } else {
        roots.emplace_back(c3, -c2);
      }
    } else {
      mpz_class r;
      if (!is_square(c2 * c2 - 4 * c1 * c3, r)) {
        throw Error(ErrorKind::kNotFullyRational, "the residual points are conjugate over Q");
      }
      roots.emplace_back(-c2 + r, 2 * c1);
      roots.emplace_back(-c2 - r, 2 * c1);
    }
    rep.cycle[0] = p;
    for (int k = 0; k < 2; ++k) rep.cycle[k + 1] = primitive(lin(roots[k].first, p, roots[k].second, d));
  }
  int bad = 0;
  std::vector<int> sum(static_cast<std::size_t>(pic_.dim()), 0);
  for (int k = 0; k < 3; ++k) {
    rep.phi[k] = phi(rep.cycle[k]);
    rep.psi[k] = class_of(rep.phi[k]);
    bad += rep.phi[k].bad ? 1 : 0;
    const auto cs = rep.phi[k].bad ? std::vector<int>(sum.size(), 0) : pic_.coords(rep.phi[k].point);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += cs[i];
  }
  rep.relation_holds = std::all_of(sum.begin(), sum.end(), [&](int v) { return v % n() == 0; });
  if (rep.kind == LineCase::kContained) {
    rep.relation_holds = rep.psi[0] == 0 && rep.psi[1] == 0 && rep.psi[2] == 0;
    rep.lemma_consistent = mod_nonneg(p[2], p_) == 0 && mod_nonneg(d[2], p_) == 0;
    return rep;
  }
  if (bad == 3) {
    rep.kind = LineCase::kAllBad;
    rep.lemma_consistent = true;
    return rep;
  }
  const GoodLineParam& g = rep.param;
  const auto red = form_.restrict_to_line(g.u, g.v);
  const bool reduced_on =
      std::all_of(red.begin(), red.end(), [&](const mpz_class& a) { return mod_nonneg(a, p_) == 0; });
  if (!reduced_on) {
    rep.kind = LineCase::kGoodReduction;
    bool indep = false;
    for (int i = 0; i < 3 && !indep; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (mod_nonneg(g.u[i] * g.v[j] - g.u[j] * g.v[i], p_) != 0) indep = true;
      }
    }
    rep.normalized_coeffs = red;
    rep.lemma_consistent = indep && bad == 0 &&
                           c.add(c.add(rep.phi[0].point, rep.phi[1].point), rep.phi[2].point) == c.origin();
    return rep;
  }

  // The reduced line lies on the cone; bring (u, v) to u = (u1,u2,u3,0),
  // v = (p v', g) with p not dividing g.
  const mpz_class& a3 = g.u[3];
  const mpz_class& b3 = g.v[3];
  mpz_class gg, k, l;
  mpz_gcdext(gg.get_mpz_t(), k.get_mpz_t(), l.get_mpz_t(), a3.get_mpz_t(), b3.get_mpz_t());
  bool through_vertex = gg != 0 && mod_nonneg(gg, p_) != 0;
  IntPoint u0, v;
  if (through_vertex) {
    const mpz_class a = a3 / gg;
    const mpz_class b = b3 / gg;
    u0 = lin(b, g.u, -a, g.v);
    const IntPoint v0 = lin(k, g.u, l, g.v);
    int j = 0;
    while (j < 3 && mod_nonneg(u0[j], p_) == 0) ++j;
    if (j == 3) {
      through_vertex = false;
    } else {
      const auto up = static_cast<std::uint64_t>(p_);
      const std::uint64_t ratio =
          field::mulmod(static_cast<std::uint64_t>(mod_nonneg(v0[j], p_)),
                        field::powmod(static_cast<std::uint64_t>(mod_nonneg(u0[j], p_)), up - 2, up), up);
      v = lin(1, v0, -mpz_class(static_cast<unsigned long>(ratio)), u0);
      for (int i = 0; i < 3; ++i) through_vertex = through_vertex && mod_nonneg(v[i], p_) == 0;
    }
  }
  if (family_ == Family::kSPrime) {
    rep.kind = LineCase::kBadCone;
    rep.lemma_consistent = through_vertex && bad == 0 && rep.phi[0].point == rep.phi[1].point &&
                           rep.phi[1].point == rep.phi[2].point;
    return rep;
  }
  if (!through_vertex) {
    rep.kind = LineCase::kBadNewton;
    rep.lemma_consistent = false;
    return rep;
  }
  for (long alpha = 0; alpha < 8 && form_.eval(v) == 0; ++alpha) v = lin(1, v, p_, u0);
  rep.param = {u0, v};
  rep.normalized_coeffs = form_.restrict_to_line(u0, v);
  const auto& nc = rep.normalized_coeffs;
  if (mod_nonneg(u0[2], p_) != 0) {
    rep.kind = LineCase::kBadNewton;
    std::vector<mpq_class> q;
    for (const auto& a : nc) q.emplace_back(a);
    rep.newton = newton_polygon(q, p_);
    const auto& rv = rep.newton->root_valuations;
    const auto negative = std::count_if(rv.begin(), rv.end(), [](const mpq_class& x) { return x < 0; });
    const CurvePoint apex = c.reduce(u0[0], u0[1], u0[2]);
    bool goods_match = true;
    for (const auto& ph : rep.phi) {
      if (!ph.bad && ph.point != apex) goods_match = false;
    }
    rep.lemma_consistent = nc[2] != 0 && ord_p(nc[2], p_) == 1 && rep.newton->positive_slope_segments() == 1 &&
                           negative == 1 && bad == 1 && goods_match;
  } else {
    rep.kind = LineCase::kBadPlaneZ0;
    bool flexes = true;
    for (const auto& ph : rep.phi) {
      if (!ph.bad && !c.is_flex(ph.point)) flexes = false;
    }
    rep.lemma_consistent = flexes;
  }
  return rep;
}

ReductionClass phi(const RationalSurfacePoint& pt, long p) { return Reducer(pt.family, pt.m, p).phi(pt.x); }

int psi(const RationalSurfacePoint& pt, long p, int n) { return Reducer(pt.family, pt.m, p, n).psi(pt.x); }

nlohmann::json SweepReport::to_json() const {
  nlohmann::json j;
  j["cycles"] = cycles;
  j["failures"] = failures;
  j["inconsistent"] = inconsistent;
  j["by_case"] = by_case;
  j["counterexample"] = counterexample ? *counterexample : nlohmann::json(nullptr);
  return j;
}

SweepReport line_relation_sweep(const Reducer& r, const std::vector<RationalSurfacePoint>& pts,
                                std::uint64_t max_pairs) {
  SweepReport rep;
  for (std::size_t i = 0; i < pts.size() && rep.cycles < max_pairs; ++i) {
    for (std::size_t j = i + 1; j < pts.size() && rep.cycles < max_pairs; ++j) {
      const LineRelationReport lr = r.verify_line_relation(pts[i].x, pts[j].x);
      ++rep.cycles;
      ++rep.by_case[line_case_name(lr.kind)];
      if (!lr.lemma_consistent) ++rep.inconsistent;
      if (!lr.relation_holds) {
        ++rep.failures;
        if (!rep.counterexample) rep.counterexample = lr.to_json(r.curve());
      }
    }
  }
  return rep;
}

double CoverageReport::coverage_percent() const {
  return curve_points == 0 ? 0.0 : 100.0 * static_cast<double>(curve_points_hit) / static_cast<double>(curve_points);
}

nlohmann::json CoverageReport::to_json() const {
  return {{"curve_points", curve_points},
          {"curve_points_hit", curve_points_hit},
          {"coverage_percent", coverage_percent()},
          {"classes", classes},
          {"classes_hit_by_curve", classes_hit_by_curve},
          {"classes_hit_by_psi", classes_hit_by_psi},
          {"psi_nonconstant", psi_nonconstant},
          {"bad_points", bad_points}};
}

CoverageReport reduction_coverage(const Reducer& r, const std::vector<RationalSurfacePoint>& pts) {
  CoverageReport rep;
  rep.curve_points = r.curve().points().size();
  rep.classes = r.pic().class_count();
  std::set<CurvePoint> hit;
  std::set<int> classes_psi;
  for (const auto& pt : pts) {
    const ReductionClass rc = r.phi(pt.x);
    if (rc.bad) {
      ++rep.bad_points;
    } else {
      hit.insert(rc.point);
    }
    classes_psi.insert(r.psi(pt.x));
  }
  std::set<int> classes_curve;
  for (const auto& q : hit) classes_curve.insert(r.pic().class_index(q));
  rep.curve_points_hit = hit.size();
  rep.classes_hit_by_curve = static_cast<int>(classes_curve.size());
  rep.classes_hit_by_psi = static_cast<int>(classes_psi.size());
  rep.psi_nonconstant = classes_psi.size() > 1;
  return rep;
}

nlohmann::json RankBound::to_json() const {
  return {{"achieved_dim", achieved_dim}, {"target_dim", target_dim}, {"n", n}, {"primes", primes}, {"points_used", points_used}};
}

RankBound rank_lower_bound(Family f, long m, const std::vector<long>& primes,
                           const std::vector<RationalSurfacePoint>& pts) {
  if (primes.empty()) throw Error(ErrorKind::kPrimeConditionFailed, "no primes given");
  std::set<long> distinct(primes.begin(), primes.end());
  if (distinct.size() != primes.size()) throw Error(ErrorKind::kPrimeConditionFailed, "primes must be distinct");
  mpz_class prod = f == Family::kS ? 1 : 3;
  for (long p : primes) {
    if (p <= 3 || !field::is_prime(static_cast<std::uint64_t>(p))) {
      throw Error(ErrorKind::kPrimeConditionFailed, std::to_string(p) + " is not a prime above 3");
    }
    const PrimeCondition pc = prime_condition(static_cast<std::uint64_t>(p));
    if (!pc.cond_a) throw Error(ErrorKind::kPrimeConditionFailed, std::to_string(p) + " is not 1 mod 3");
    if (f == Family::kS && !pc.cond_b) {
      throw Error(ErrorKind::kPrimeConditionFailed, "2 is not a cube mod " + std::to_string(p));
    }
    prod *= p;
  }
  if (prod != m) throw Error(ErrorKind::kPrimeConditionFailed, "M does not match the primes");
  std::vector<Reducer> reducers;
  for (long p : primes) reducers.emplace_back(f, m, p);
  RankBound rb;
  rb.n = reducers.front().n();
  rb.primes = primes;
  rb.target_dim = 2 * static_cast<int>(primes.size());
  const IntPoint base{1, -1, 0, 0};
  std::vector<int> base_vec;
  for (const auto& r : reducers) {
    const auto c = r.psi_coords(base);
    base_vec.insert(base_vec.end(), c.begin(), c.end());
  }
  const int n = rb.n;
  std::vector<std::vector<int>> echelon;  // rows with leading 1 at distinct columns
  std::vector<std::size_t> leads;
  for (const auto& pt : pts) {
    std::vector<int> v;
    for (const auto& r : reducers) {
      const auto c = r.psi_coords(pt.x);
      v.insert(v.end(), c.begin(), c.end());
    }
    ++rb.points_used;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ((v[i] - base_vec[i]) % n + n) % n;
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const int f0 = v[leads[e]];
      if (f0 == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = ((v[i] - f0 * echelon[e][i]) % n + n) % n;
    }
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) continue;
    int inv = 1;
    while (v[lead] * inv % n != 1) ++inv;
    for (auto& x : v) x = x * inv % n;
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const int f0 = echelon[e][lead];
      if (f0 == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) echelon[e][i] = ((echelon[e][i] - f0 * v[i]) % n + n) % n;
    }
    echelon.push_back(v);
    leads.push_back(lead);
    if (static_cast<int>(echelon.size()) == static_cast<int>(v.size())) break;
  }
  rb.achieved_dim = static_cast<int>(echelon.size());
  return rb;
}

nlohmann::json DelPezzoReport::to_json() const {
  return {{"M", m},
          {"p", p},
          {"l1_choices", l1_choices},
          {"l1_on_surface", l1_on_surface},
          {"l2_choices", l2_choices},
          {"l2_on_surface", l2_on_surface},
          {"distinct_lines", distinct_lines},
          {"perturbed_l1_on_surface", perturbed_l1_on_surface},
          {"passed", passed()}};
}

namespace {

struct DelPezzoConstants {
  std::vector<long> zeta, root, theta;
};

DelPezzoConstants del_pezzo_constants(long m, long p) {
  DelPezzoConstants k;
  if (p < 5 || !field::is_prime(static_cast<std::uint64_t>(p))) return k;
  const long mm = ((-m) % p + p) % p;
  for (long a = 0; a < p; ++a) {
    const long sq = a * a % p;
    if ((sq + a + 1) % p == 0) k.zeta.push_back(a);
    if (sq == mm && mm != 0) k.root.push_back(a);
    if (sq * a % p == 2 % p) k.theta.push_back(a);
  }
  return k;
}

}  // namespace

DelPezzoReport del_pezzo_line_check(long m, long p) {
  const DelPezzoConstants k = del_pezzo_constants(m, p);
  std::string missing;
  if (k.zeta.empty()) missing += " zeta";
  if (k.root.empty()) missing += " sqrt(-M)";
  if (k.theta.empty()) missing += " cbrt(2)";
  if (!missing.empty()) throw Error(ErrorKind::kConstantsUnavailable, "missing over F_p:" + missing);
  auto md = [&](long a) { return ((a % p) + p) % p; };
  using Row = std::array<long, 5>;
  // (x, y, z, w, t)
  auto quad = [&](int which, const Row& a, const Row& b) {
    auto q = [&](const Row& v) {
      if (which == 0) return md(v[0] * v[0] - v[0] * v[1] + v[1] * v[1] + v[2] * v[4]);
      return md(v[2] * v[2] + md(m) * md(v[3] * v[3]) - v[0] * v[4] - v[1] * v[4]);
    };
    Row s{};
    for (int i = 0; i < 5; ++i) s[i] = md(a[i] + b[i]);
    return q(a) == 0 && q(b) == 0 && md(q(s) - q(a) - q(b)) == 0;
  };
  std::set<std::vector<Row>> lines;
  auto on_surface = [&](const std::vector<Row>& eqs) {
    const auto ns = nullspace_mod(eqs, p);
    if (ns.size() != 2) return false;
    lines.insert(rref_mod(ns, p));
    return quad(0, ns[0], ns[1]) && quad(1, ns[0], ns[1]);
  };
  DelPezzoReport rep;
  rep.m = m;
  rep.p = p;
  for (long z : k.zeta) {
    for (long s : k.root) {
      ++rep.l1_choices;
      if (on_surface({Row{1, z, 0, 0, 0}, Row{0, 0, 1, s, 0}, Row{0, 0, 0, 0, 1}})) ++rep.l1_on_surface;
      for (long th : k.theta) {
        ++rep.l2_choices;
        const long t2 = th * th % p;
        const std::vector<Row> eqs{Row{0, 0, md(-th), md(th * s), 1},
                                   Row{md(3 * t2), 0, md((2 * z - 2) * th), 0, md(z + 2)},
                                   Row{0, md(3 * t2), md((-2 * z - 4) * th), 0, md(-z + 1)}};
        if (on_surface(eqs)) ++rep.l2_on_surface;
      }
    }
  }
  rep.distinct_lines = static_cast<int>(lines.size());
  {
    const std::vector<Row> flipped{Row{1, md(-k.zeta[0]), 0, 0, 0}, Row{0, 0, 1, k.root[0], 0}, Row{0, 0, 0, 0, 1}};
    const auto ns = nullspace_mod(flipped, p);
    rep.perturbed_l1_on_surface = ns.size() == 2 && quad(0, ns[0], ns[1]) && quad(1, ns[0], ns[1]);
  }
  return rep;
}

long smallest_del_pezzo_prime(long m) {
  for (long p = 5; p < 1000000; ++p) {
    const DelPezzoConstants k = del_pezzo_constants(m, p);
    if (!k.zeta.empty() && !k.root.empty() && !k.theta.empty()) return p;
  }
  throw Error(ErrorKind::kConstantsUnavailable, "no prime below 10^6 carries all constants");
}

}  // namespace cubsurf
