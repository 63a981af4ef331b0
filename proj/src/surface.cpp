#include "cubsurf/surface.hpp"

#include <algorithm>
#include <map>

#include "cubsurf/error.hpp"
#include "cubsurf/field/roots.hpp"
#include "groebner.hpp"

namespace cubsurf {
namespace {

constexpr std::array<std::array<int, 4>, 10> kQuadratic = {{{2, 0, 0, 0},
                                                            {1, 1, 0, 0},
                                                            {1, 0, 1, 0},
                                                            {1, 0, 0, 1},
                                                            {0, 2, 0, 0},
                                                            {0, 1, 1, 0},
                                                            {0, 1, 0, 1},
                                                            {0, 0, 2, 0},
                                                            {0, 0, 1, 1},
                                                            {0, 0, 0, 2}}};

int quad_index(const std::array<int, 4>& e) {
  for (int i = 0; i < 10; ++i) {
    if (kQuadratic[i] == e) return i;
  }
  return -1;
}

// For cubic monomial m: m = kQuadratic[split[m].first] * x_{split[m].second}.
struct Split {
  int quad;
  int var;
};

const std::array<Split, 20>& cubic_splits() {
  static const std::array<Split, 20> table = [] {
    std::array<Split, 20> t{};
    for (int m = 0; m < 20; ++m) {
      Exponent e = cubic_monomials()[m];
      int var = 3;
      while (e[var] == 0) --var;
      e[var] -= 1;
      t[m] = Split{quad_index(e), var};
    }
    return t;
  }();
  return table;
}

constexpr int kQuadPairs[10][2] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};

std::array<Elem, 10> quad_values(const GF& f, const Vec4& x) {
  std::array<Elem, 10> q;
  for (int i = 0; i < 10; ++i) q[i] = f.mul(x[kQuadPairs[i][0]], x[kQuadPairs[i][1]]);
  return q;
}

// Descending lexicographic exponent vectors of degree 3 in m variables.
std::vector<std::vector<int>> degree3_exponents(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(m, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == m - 1) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, 3);
  return out;
}

Vec4 unit(const GF& f, int i) {
  Vec4 v{f.zero(), f.zero(), f.zero(), f.zero()};
  v[i] = f.one();
  return v;
}

// Roots of the binary quadratic a s^2 + b s t + c t^2 (not identically zero).
field::CubicRoots<GF> binary_quadratic_roots(const GF& f, Elem a, Elem b, Elem c) {
  // t * (a s^2 + b s t + c t^2) has the extra root (1:0).
  auto r = *field::try_roots_of_cubic(f, f.zero(), a, b, c);
  for (auto it = r.roots.begin(); it != r.roots.end(); ++it) {
    if (it->at_infinity) {
      if (--it->multiplicity == 0) r.roots.erase(it);
      break;
    }
  }
  return r;
}

int distinct_roots_closure(const field::CubicRoots<GF>& r) {
  return static_cast<int>(r.roots.size()) + r.extension_roots;
}

Elem quad_form_at(const CubicForm& s, const ProjPoint& p, const Vec4& v) { return dot(s.field(), s.gradient(v), p.x); }

void require_on_surface(const CubicForm& s, const ProjPoint& p) {
  if (!s.field().is_zero(s.eval(p.x))) throw Error(ErrorKind::kPointNotOnSurface, "point is not on the surface");
}

}  // namespace

const std::array<Exponent, 20>& cubic_monomials() {
  static const std::array<Exponent, 20> table = [] {
    std::array<Exponent, 20> t{};
    auto all = degree3_exponents(4);
    for (int i = 0; i < 20; ++i) t[i] = {all[i][0], all[i][1], all[i][2], all[i][3]};
    return t;
  }();
  return table;
}

std::string monomial_key(const Exponent& e) {
  std::string s;
  for (int v : e) s += static_cast<char>('0' + v);
  return s;
}

int monomial_index(const Exponent& e) {
  const auto& m = cubic_monomials();
  for (int i = 0; i < 20; ++i) {
    if (m[i] == e) return i;
  }
  throw Error(ErrorKind::kInvalidArgument, "not a cubic monomial: " + monomial_key(e));
}

CubicForm::CubicForm(GFPtr field, std::array<Elem, 20> coeffs) : field_(std::move(field)), coeffs_(coeffs) {
  const GF& f = *field_;
  for (auto& row : partials_) row.fill(f.zero());
  const auto& mons = cubic_monomials();
  for (int m = 0; m < 20; ++m) {
    for (int i = 0; i < 4; ++i) {
      if (mons[m][i] == 0) continue;
      Exponent d = mons[m];
      d[i] -= 1;
      const int qi = quad_index(d);
      partials_[i][qi] = f.add(partials_[i][qi], f.mul(f.from_int(mons[m][i]), coeffs_[m]));
    }
  }
}

bool CubicForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](Elem e) { return field_->is_zero(e); });
}

Elem CubicForm::eval(const Vec4& x) const {
  const GF& f = *field_;
  const auto q = quad_values(f, x);
  const auto& splits = cubic_splits();
  Elem acc = f.zero();
  for (int m = 0; m < 20; ++m) {
    if (f.is_zero(coeffs_[m])) continue;
    acc = f.add(acc, f.mul(coeffs_[m], f.mul(q[splits[m].quad], x[splits[m].var])));
  }
  return acc;
}

Vec4 CubicForm::gradient(const Vec4& x) const {
  const GF& f = *field_;
  const auto q = quad_values(f, x);
  Vec4 g;
  for (int i = 0; i < 4; ++i) {
    Elem acc = f.zero();
    for (int k = 0; k < 10; ++k) {
      if (!f.is_zero(partials_[i][k])) acc = f.add(acc, f.mul(partials_[i][k], q[k]));
    }
    g[i] = acc;
  }
  return g;
}

std::array<Elem, 4> CubicForm::restrict_to_line(const Vec4& u, const Vec4& v) const {
  const GF& f = *field_;
  return {eval(u), dot(f, gradient(u), v), dot(f, gradient(v), u), eval(v)};
}

nlohmann::json CubicForm::to_json() const {
  nlohmann::json coeffs = nlohmann::json::object();
  for (int m = 0; m < 20; ++m) {
    if (!field_->is_zero(coeffs_[m])) coeffs[monomial_key(cubic_monomials()[m])] = field_->element_to_json(coeffs_[m]);
  }
  return nlohmann::json{{"field", field_->to_json()}, {"coeffs", coeffs}};
}

mpz_class IntegerCubic::eval(const std::array<mpz_class, 4>& x) const {
  mpz_class acc = 0;
  const auto& mons = cubic_monomials();
  for (int m = 0; m < 20; ++m) {
    if (coeffs[m] == 0) continue;
    mpz_class term = coeffs[m];
    for (int i = 0; i < 4; ++i) {
      for (int r = 0; r < mons[m][i]; ++r) term *= x[i];
    }
    acc += term;
  }
  return acc;
}

std::array<mpz_class, 4> IntegerCubic::gradient(const std::array<mpz_class, 4>& x) const {
  std::array<mpz_class, 4> g{0, 0, 0, 0};
  const auto& mons = cubic_monomials();
  for (int m = 0; m < 20; ++m) {
    if (coeffs[m] == 0) continue;
    for (int i = 0; i < 4; ++i) {
      if (mons[m][i] == 0) continue;
      mpz_class term = coeffs[m] * mons[m][i];
      for (int v = 0; v < 4; ++v) {
        const int e = mons[m][v] - (v == i ? 1 : 0);
        for (int r = 0; r < e; ++r) term *= x[v];
      }
      g[i] += term;
    }
  }
  return g;
}

std::array<mpz_class, 4> IntegerCubic::restrict_to_line(const std::array<mpz_class, 4>& u,
                                                        const std::array<mpz_class, 4>& v) const {
  const auto gu = gradient(u);
  const auto gv = gradient(v);
  mpz_class c2 = 0;
  mpz_class c1 = 0;
  for (int i = 0; i < 4; ++i) {
    c2 += gu[i] * v[i];
    c1 += gv[i] * u[i];
  }
  return {eval(u), c2, c1, eval(v)};
}

CubicForm IntegerCubic::reduce(GFPtr f) const {
  std::array<Elem, 20> c;
  const mpz_class p(static_cast<unsigned long>(f->characteristic()));
  for (int m = 0; m < 20; ++m) {
    mpz_class r = coeffs[m] % p;
    if (r < 0) r += p;
    c[m] = f->from_int(static_cast<std::int64_t>(r.get_si()));
  }
  return CubicForm(std::move(f), c);
}

IntegerCubic family_s(long m) {
  IntegerCubic s;
  for (auto& c : s.coeffs) c = 0;
  s.coeffs[monomial_index({3, 0, 0, 0})] = 1;
  s.coeffs[monomial_index({0, 3, 0, 0})] = 1;
  s.coeffs[monomial_index({0, 0, 3, 0})] = 1;
  s.coeffs[monomial_index({0, 0, 1, 2})] = m;
  return s;
}

IntegerCubic family_s_prime(long m) {
  IntegerCubic s;
  for (auto& c : s.coeffs) c = 0;
  s.coeffs[monomial_index({3, 0, 0, 0})] = 1;
  s.coeffs[monomial_index({0, 3, 0, 0})] = 1;
  s.coeffs[monomial_index({0, 0, 3, 0})] = 1;
  s.coeffs[monomial_index({0, 0, 0, 3})] = m;
  return s;
}

CubicForm fermat(GFPtr f) {
  std::array<Elem, 20> c;
  c.fill(f->zero());
  for (int i = 0; i < 4; ++i) {
    Exponent e{0, 0, 0, 0};
    e[i] = 3;
    c[monomial_index(e)] = f->one();
  }
  return CubicForm(std::move(f), c);
}

CubicForm eckardt_example() {
  GFPtr f = GF::make(2, 1);
  std::array<Elem, 20> c;
  c.fill(f->zero());
  for (const Exponent& e : {Exponent{2, 0, 1, 0}, Exponent{2, 0, 0, 1}, Exponent{1, 2, 0, 0}, Exponent{1, 1, 1, 0},
                            Exponent{1, 0, 0, 2}, Exponent{0, 2, 1, 0}, Exponent{0, 1, 2, 0}}) {
    c[monomial_index(e)] = f->one();
  }
  return CubicForm(std::move(f), c);
}

CubicForm cubic_from_json(const nlohmann::json& j, GFPtr field) {
  if (!field) {
    if (!j.contains("field")) throw Error(ErrorKind::kInvalidArgument, "surface JSON needs a field");
    field = GF::from_json(j.at("field"));
  }
  std::array<Elem, 20> c;
  c.fill(field->zero());
  for (const auto& [key, value] : j.at("coeffs").items()) {
    if (key.size() != 4) throw Error(ErrorKind::kInvalidArgument, "bad monomial key " + key);
    Exponent e;
    for (int i = 0; i < 4; ++i) e[i] = key[i] - '0';
    const int idx = monomial_index(e);
    c[idx] = field->add(c[idx], field->element_from_json(value));
  }
  return CubicForm(std::move(field), c);
}

CubicForm base_change(const CubicForm& s, GFPtr big) {
  const auto emb = field::embedding(s.field(), *big);
  std::array<Elem, 20> c;
  for (int m = 0; m < 20; ++m) c[m] = emb[s.coeffs()[m].v];
  return CubicForm(std::move(big), c);
}

std::vector<Elem> substitute(const CubicForm& s, const std::vector<Vec4>& columns) {
  const GF& f = s.field();
  const int m = static_cast<int>(columns.size());
  const auto targets = degree3_exponents(m);
  std::map<std::vector<int>, Elem> acc;
  const auto& mons = cubic_monomials();
  for (int idx = 0; idx < 20; ++idx) {
    if (f.is_zero(s.coeffs()[idx])) continue;
    // Product of the linear forms x_i = sum_j columns[j][i] y_j.
    std::map<std::vector<int>, Elem> prod{{std::vector<int>(m, 0), s.coeffs()[idx]}};
    for (int i = 0; i < 4; ++i) {
      for (int r = 0; r < mons[idx][i]; ++r) {
        std::map<std::vector<int>, Elem> next;
        for (const auto& [e, c] : prod) {
          for (int j = 0; j < m; ++j) {
            if (f.is_zero(columns[j][i])) continue;
            auto e2 = e;
            e2[j] += 1;
            auto [it, inserted] = next.emplace(e2, f.zero());
            it->second = f.add(it->second, f.mul(c, columns[j][i]));
          }
        }
        prod = std::move(next);
      }
    }
    for (const auto& [e, c] : prod) {
      auto [it, inserted] = acc.emplace(e, f.zero());
      it->second = f.add(it->second, c);
    }
  }
  std::vector<Elem> out;
  out.reserve(targets.size());
  for (const auto& e : targets) {
    auto it = acc.find(e);
    out.push_back(it == acc.end() ? f.zero() : it->second);
  }
  return out;
}

CubicForm transform_cubic(const CubicForm& s, const std::array<Vec4, 4>& columns) {
  const auto c = substitute(s, std::vector<Vec4>(columns.begin(), columns.end()));
  std::array<Elem, 20> arr;
  std::copy(c.begin(), c.end(), arr.begin());
  return CubicForm(s.field_ptr(), arr);
}

SmoothnessReport check_smoothness(const CubicForm& s, std::size_t witness_budget, std::size_t max_pairs) {
  const GF& f = s.field();
  SmoothnessReport report;
  if (s.is_zero()) {
    report.smooth = false;
    report.witness = ProjPoint{unit(f, 0)};
    report.witness_field = s.field_ptr();
    return report;
  }
  std::vector<detail::MPoly> gens;
  const auto& mons = cubic_monomials();
  {
    std::vector<detail::Term> terms;
    for (int m = 0; m < 20; ++m) {
      terms.push_back({{static_cast<std::uint8_t>(mons[m][0]), static_cast<std::uint8_t>(mons[m][1]),
                        static_cast<std::uint8_t>(mons[m][2]), static_cast<std::uint8_t>(mons[m][3])},
                       s.coeffs()[m]});
    }
    gens.push_back(detail::make_mpoly(f, terms));
  }
  for (int i = 0; i < 4; ++i) {
    std::vector<detail::Term> terms;
    for (int m = 0; m < 20; ++m) {
      if (mons[m][i] == 0) continue;
      Exponent d = mons[m];
      d[i] -= 1;
      terms.push_back({{static_cast<std::uint8_t>(d[0]), static_cast<std::uint8_t>(d[1]),
                        static_cast<std::uint8_t>(d[2]), static_cast<std::uint8_t>(d[3])},
                       f.mul(f.from_int(mons[m][i]), s.coeffs()[m])});
    }
    gens.push_back(detail::make_mpoly(f, terms));
  }
  report.smooth = detail::projective_zero_set_empty(f, gens, max_pairs);
  if (report.smooth) return report;

  // Look for a singular point over F_q, F_{q^2}, ... within the budget.
  std::uint64_t qk = f.size();
  for (unsigned k = 1; k * f.degree() <= field::ExtField::kMaxDegree; ++k, qk *= f.size()) {
    if (qk > GF::kMaxOrder || qk * qk * qk > witness_budget) break;
    GFPtr big = k == 1 ? s.field_ptr() : GF::make(f.characteristic(), k * f.degree());
    const CubicForm sb = k == 1 ? s : base_change(s, big);
    for (const ProjPoint& p : all_points(*big)) {
      if (!big->is_zero(sb.eval(p.x))) continue;
      if (is_zero_vec(*big, sb.gradient(p.x))) {
        report.witness = p;
        report.witness_field = big;
        return report;
      }
    }
  }
  return report;
}

bool is_smooth(const CubicForm& s) { return check_smoothness(s, 0).smooth; }

IntersectionDivisor intersect_line(const CubicForm& s, const Line3& l) {
  const GF& f = s.field();
  const auto c = s.restrict_to_line(l.rows[0], l.rows[1]);
  IntersectionDivisor d;
  const auto roots = field::try_roots_of_cubic(f, c[0], c[1], c[2], c[3]);
  if (!roots) {
    d.contained = true;
    return d;
  }
  for (const auto& r : roots->roots) {
    d.points.emplace_back(normalize(f, combine(f, r.s, l.rows[0], r.t, l.rows[1])), r.multiplicity);
  }
  d.extension_multiplicity = roots->extension_roots;
  return d;
}

bool line_on_surface(const CubicForm& s, const Line3& l) {
  const GF& f = s.field();
  const auto c = s.restrict_to_line(l.rows[0], l.rows[1]);
  return f.is_zero(c[0]) && f.is_zero(c[1]) && f.is_zero(c[2]) && f.is_zero(c[3]);
}

SurfaceLines lines_on_surface(const CubicForm& s_in, unsigned k) {
  const GF& base = s_in.field();
  std::uint64_t qk = 1;
  for (unsigned i = 0; i < k * base.degree(); ++i) {
    qk *= base.characteristic();
    if (qk > GF::kMaxOrder) throw Error(ErrorKind::kBudgetExceeded, "line scan limited to fields of 2^22 elements");
  }
  GFPtr big = k == 1 ? s_in.field_ptr() : GF::make(base.characteristic(), k * base.degree());
  CubicForm s = k == 1 ? s_in : base_change(s_in, big);
  const GF& f = *big;
  const std::uint32_t q = f.size();

  std::vector<Line3> lines;
  static constexpr int kPivots[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& piv : kPivots) {
    const int i = piv[0];
    const int j = piv[1];
    std::vector<int> free0;
    std::vector<int> free1;
    for (int c = i + 1; c < 4; ++c) {
      if (c != j) free0.push_back(c);
    }
    for (int c = j + 1; c < 4; ++c) free1.push_back(c);
    std::uint64_t n0 = 1;
    std::uint64_t n1 = 1;
    for (std::size_t t = 0; t < free0.size(); ++t) n0 *= q;
    for (std::size_t t = 0; t < free1.size(); ++t) n1 *= q;
    for (std::uint64_t a = 0; a < n0; ++a) {
      Vec4 u = unit(f, i);
      std::uint64_t r = a;
      for (std::size_t t = free0.size(); t-- > 0;) {
        u[free0[t]] = Elem{static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
      if (!f.is_zero(s.eval(u))) continue;
      const Vec4 gu = s.gradient(u);
      for (std::uint64_t b = 0; b < n1; ++b) {
        Vec4 v = unit(f, j);
        std::uint64_t rr = b;
        for (std::size_t t = free1.size(); t-- > 0;) {
          v[free1[t]] = Elem{static_cast<std::uint32_t>(rr % q)};
          rr /= q;
        }
        if (!f.is_zero(dot(f, gu, v))) continue;
        if (!f.is_zero(s.eval(v))) continue;
        if (!f.is_zero(dot(f, s.gradient(v), u))) continue;
        lines.push_back(Line3{{u, v}});
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  return SurfaceLines{big, std::move(s), std::move(lines)};
}

std::vector<LineIncidence> line_incidence(const GF& f, const std::vector<Line3>& lines) {
  const std::size_t n = lines.size();
  std::vector<std::vector<bool>> meets(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) meets[a][b] = meets[b][a] = !skew(f, lines[a], lines[b]);
  }
  std::vector<LineIncidence> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> nb;
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a && meets[a][b]) nb.push_back(b);
    }
    out[a].neighbours = static_cast<int>(nb.size());
    // Partner of each neighbour: another neighbour meeting it in the plane
    // spanned with lines[a].
    std::vector<int> partner_count(nb.size(), 0);
    std::vector<std::size_t> partner(nb.size(), 0);
    for (std::size_t x = 0; x < nb.size(); ++x) {
      for (std::size_t y = 0; y < nb.size(); ++y) {
        if (x == y || !meets[nb[x]][nb[y]]) continue;
        const int r = rank(f, {lines[a].rows[0], lines[a].rows[1], lines[nb[x]].rows[0], lines[nb[x]].rows[1],
                               lines[nb[y]].rows[0], lines[nb[y]].rows[1]});
        if (r == 3) {
          ++partner_count[x];
          partner[x] = y;
        }
      }
    }
    bool ok = true;
    int pairs = 0;
    for (std::size_t x = 0; x < nb.size(); ++x) {
      if (partner_count[x] != 1 || partner[partner[x]] != x) {
        ok = false;
        continue;
      }
      if (partner[x] > x) ++pairs;
    }
    // Lines from different pairs must be disjoint.
    for (std::size_t x = 0; ok && x < nb.size(); ++x) {
      for (std::size_t y = 0; y < nb.size(); ++y) {
        if (y != x && y != partner[x] && meets[nb[x]][nb[y]]) ok = false;
      }
    }
    out[a].coplanar_pairs = pairs;
    out[a].pairs_partition = ok && pairs == 5 && nb.size() == 10;
  }
  return out;
}

Plane3 tangent_plane(const CubicForm& s, const ProjPoint& p) {
  require_on_surface(s, p);
  const Vec4 g = s.gradient(p.x);
  if (is_zero_vec(s.field(), g)) throw Error(ErrorKind::kSingularPoint, "gradient vanishes at the point");
  return normalize_plane(s.field(), g);
}

std::string_view to_string(PointKind k) {
  switch (k) {
    case PointKind::kEckardt: return "Eckardt";
    case PointKind::kParabolicNonEckardt: return "ParabolicNonEckardt";
    case PointKind::kHyperbolic: return "Hyperbolic";
    case PointKind::kElliptic: return "Elliptic";
  }
  return "?";
}

std::string_view to_string(GammaType t) {
  switch (t) {
    case GammaType::kIrreducibleNodal: return "IrreducibleNodal";
    case GammaType::kIrreducibleCuspidal: return "IrreducibleCuspidal";
    case GammaType::kConicPlusLine: return "ConicPlusLine";
    case GammaType::kThreeLines: return "ThreeLines";
  }
  return "?";
}

std::string_view to_string(SingularityType t) {
  switch (t) {
    case SingularityType::kNode: return "Node";
    case SingularityType::kCusp: return "Cusp";
    case SingularityType::kTriplePoint: return "TriplePoint";
  }
  return "?";
}

TangentCone tangent_cone(const CubicForm& s, const ProjPoint& p) {
  const GF& f = s.field();
  require_on_surface(s, p);
  const Vec4 n = s.gradient(p.x);
  if (is_zero_vec(f, n)) throw Error(ErrorKind::kSingularPoint, "gradient vanishes at the point");
  int j = 0;
  while (f.is_zero(n[j])) ++j;
  const Elem inv = f.inv(n[j]);
  std::vector<Vec4> cand;
  for (int i = 0; i < 4; ++i) {
    if (i == j) continue;
    Vec4 v = unit(f, i);
    v[j] = f.neg(f.mul(n[i], inv));
    cand.push_back(v);
  }
  TangentCone tc{};
  bool found = false;
  for (std::size_t a = 0; a < cand.size() && !found; ++a) {
    for (std::size_t b = a + 1; b < cand.size() && !found; ++b) {
      if (rank(f, {p.x, cand[a], cand[b]}) == 3) {
        tc.v1 = cand[a];
        tc.v2 = cand[b];
        found = true;
      }
    }
  }
  tc.a = quad_form_at(s, p, tc.v1);
  tc.c = quad_form_at(s, p, tc.v2);
  Vec4 sum;
  for (int i = 0; i < 4; ++i) sum[i] = f.add(tc.v1[i], tc.v2[i]);
  tc.b = f.sub(f.sub(quad_form_at(s, p, sum), tc.a), tc.c);
  return tc;
}

namespace {

struct ConeAnalysis {
  TangentCone cone;
  bool eckardt = false;
  bool double_root = false;
  field::CubicRoots<GF> roots;  // rational asymptotic directions (a:b)
  int on_line_count = 0;
};

ConeAnalysis analyse_cone(const CubicForm& s, const ProjPoint& p) {
  const GF& f = s.field();
  ConeAnalysis an;
  an.cone = tangent_cone(s, p);
  const TangentCone& tc = an.cone;
  const auto g = s.restrict_to_line(tc.v1, tc.v2);  // F(a V1 + b V2)
  if (f.is_zero(tc.a) && f.is_zero(tc.b) && f.is_zero(tc.c)) {
    an.eckardt = true;
    const auto r = field::try_roots_of_cubic(f, g[0], g[1], g[2], g[3]);
    an.on_line_count = r ? distinct_roots_closure(*r) : 3;
    return an;
  }
  an.roots = binary_quadratic_roots(f, tc.a, tc.b, tc.c);
  an.double_root = an.roots.roots.size() == 1 && an.roots.roots[0].multiplicity == 2;
  // Common roots of the cone and the cubic F(a V1 + b V2) over the closure.
  int count = 0;
  if (f.is_zero(tc.a) && f.is_zero(g[0])) ++count;  // direction V1
  field::Poly<GF> qx{tc.c, tc.b, tc.a};
  field::Poly<GF> gx{g[3], g[2], g[1], g[0]};
  field::poly_trim(f, qx);
  field::poly_trim(f, gx);
  field::Poly<GF> h = gx.empty() ? qx : field::poly_gcd(f, qx, gx);
  if (h.size() == 2) {
    count += 1;
  } else if (h.size() == 3) {
    const auto hr = binary_quadratic_roots(f, h[2], h[1], h[0]);
    count += distinct_roots_closure(hr);
  }
  an.on_line_count = count;
  return an;
}

}  // namespace

PointClass classify_point(const CubicForm& s, const ProjPoint& p) {
  const ConeAnalysis an = analyse_cone(s, p);
  PointClass pc;
  pc.on_line_count = an.on_line_count;
  if (an.eckardt) {
    pc.kind = PointKind::kEckardt;
  } else if (an.double_root) {
    pc.kind = PointKind::kParabolicNonEckardt;
  } else if (an.roots.roots.size() == 2) {
    pc.kind = PointKind::kHyperbolic;
  } else {
    pc.kind = PointKind::kElliptic;
  }
  pc.ternary = pc.kind != PointKind::kElliptic;
  return pc;
}

AsymptoticLines asymptotic_lines(const CubicForm& s, const ProjPoint& p) {
  const GF& f = s.field();
  const ConeAnalysis an = analyse_cone(s, p);
  AsymptoticLines out;
  if (an.eckardt) {
    out.count_closure = -1;
    // Every line through P inside the tangent plane.
    out.lines.push_back(line_from_vectors(f, p.x, an.cone.v1));
    for (std::uint32_t a = 0; a < f.size(); ++a) {
      out.lines.push_back(line_from_vectors(f, p.x, combine(f, Elem{a}, an.cone.v1, f.one(), an.cone.v2)));
    }
    std::sort(out.lines.begin(), out.lines.end());
    return out;
  }
  out.count_closure = an.double_root ? 1 : 2;
  for (const auto& r : an.roots.roots) {
    out.lines.push_back(line_from_vectors(f, p.x, combine(f, r.s, an.cone.v1, r.t, an.cone.v2)));
  }
  std::sort(out.lines.begin(), out.lines.end());
  return out;
}

GammaCurve gamma_curve(const CubicForm& s, const ProjPoint& p) {
  const ConeAnalysis an = analyse_cone(s, p);
  GammaCurve g;
  g.basis = {p.x, an.cone.v1, an.cone.v2};
  g.coeffs = substitute(s, {p.x, an.cone.v1, an.cone.v2});
  if (an.eckardt) {
    g.singularity = SingularityType::kTriplePoint;
    g.type = GammaType::kThreeLines;
    return g;
  }
  g.singularity = an.double_root ? SingularityType::kCusp : SingularityType::kNode;
  if (an.on_line_count == 0) {
    g.type = an.double_root ? GammaType::kIrreducibleCuspidal : GammaType::kIrreducibleNodal;
  } else if (an.on_line_count == 1) {
    g.type = GammaType::kConicPlusLine;
  } else {
    g.type = GammaType::kThreeLines;
  }
  return g;
}

GaussOnLine gauss_on_line(const CubicForm& s, const Line3& l) {
  const GF& f = s.field();
  if (!line_on_surface(s, l)) throw Error(ErrorKind::kLineNotOnSurface, "line is not contained in the surface");
  const LineShape sh = shape(f, l);
  const Vec4& u = l.rows[0];
  const Vec4& v = l.rows[1];
  Vec4 w;
  for (int i = 0; i < 4; ++i) w[i] = f.add(u[i], v[i]);
  const Vec4 gu = s.gradient(u);
  const Vec4 gv = s.gradient(v);
  const Vec4 gw = s.gradient(w);
  // grad F(sU + tV) = alpha H1 + beta H2 with alpha, beta binary quadratics.
  const int f1 = sh.free[0];
  const int f2 = sh.free[1];
  const Elem a0 = gu[f1];
  const Elem a2 = gv[f1];
  const Elem a1 = f.sub(f.sub(gw[f1], a0), a2);
  const Elem b0 = gu[f2];
  const Elem b2 = gv[f2];
  const Elem b1 = f.sub(f.sub(gw[f2], b0), b2);

  GaussOnLine out;
  const auto pts = points_on_line(f, l);
  for (const ProjPoint& p : pts) {
    if (classify_point(s, p).kind == PointKind::kEckardt) out.eckardt_points.push_back(p);
  }
  std::sort(out.eckardt_points.begin(), out.eckardt_points.end());
  if (f.characteristic() == 2 && f.is_zero(a1) && f.is_zero(b1)) {
    out.separable = false;
    out.parabolic_count_closure = -1;
    out.parabolic_points = pts;
    std::sort(out.parabolic_points.begin(), out.parabolic_points.end());
    return out;
  }
  const Elem r0 = f.sub(f.mul(a0, b1), f.mul(a1, b0));
  const Elem r1 = f.mul(f.from_int(2), f.sub(f.mul(a0, b2), f.mul(a2, b0)));
  const Elem r2 = f.sub(f.mul(a1, b2), f.mul(a2, b1));
  const auto roots = binary_quadratic_roots(f, r0, r1, r2);
  out.parabolic_count_closure = distinct_roots_closure(roots);
  for (const auto& r : roots.roots) out.parabolic_points.push_back(normalize(f, combine(f, r.s, u, r.t, v)));
  std::sort(out.parabolic_points.begin(), out.parabolic_points.end());
  return out;
}

std::vector<ProjPoint> surface_points(const CubicForm& s) {
  const GF& f = s.field();
  std::vector<ProjPoint> out;
  for (const ProjPoint& p : all_points(f)) {
    if (f.is_zero(s.eval(p.x))) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> surface_points_by_fibres(const CubicForm& s) {
  const GF& f = s.field();
  const std::uint32_t q = f.size();
  std::vector<ProjPoint> out;
  const Vec4 e3 = unit(f, 3);
  if (f.is_zero(s.eval(e3))) out.push_back(ProjPoint{e3});
  // Base points (x0:x1:x2) of P^2, normalized.
  for (int lead = 0; lead < 3; ++lead) {
    std::uint64_t n = 1;
    for (int c = lead + 1; c < 3; ++c) n *= q;
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      Vec4 a = unit(f, lead);
      std::uint64_t r = idx;
      for (int c = 2; c > lead; --c) {
        a[c] = Elem{static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
      const auto c = s.restrict_to_line(a, e3);
      const auto roots = field::try_roots_of_cubic(f, c[0], c[1], c[2], c[3]);
      if (!roots) {
        for (std::uint32_t t = 0; t < q; ++t) {
          Vec4 x = a;
          x[3] = Elem{t};
          out.push_back(ProjPoint{x});
        }
        continue;
      }
      for (const auto& root : roots->roots) {
        if (f.is_zero(root.s)) continue;  // the point e3
        out.push_back(normalize(f, combine(f, root.s, a, root.t, e3)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cubsurf
