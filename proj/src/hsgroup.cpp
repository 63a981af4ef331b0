#include "cubsurf/hsgroup.hpp"

#include <algorithm>
#include <map>

#include "cubsurf/error.hpp"

namespace cubsurf {
namespace {

SparseRow merge(const SparseRow& a, const SparseRow& b, std::int64_t sb) {
  std::map<std::uint32_t, std::int64_t> acc;
  for (const auto& [c, v] : a) acc[c] += v;
  for (const auto& [c, v] : b) acc[c] += sb * v;
  SparseRow out;
  for (const auto& [c, v] : acc) {
    if (v != 0) out.emplace_back(c, v);
  }
  return out;
}

SparseRow triple_row(const Triple& t) { return merge({}, {{t[0], 1}, {t[1], 1}, {t[2], 1}}, 1); }

nlohmann::json mpz_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

}  // namespace

RelationSet relation_rows(const PointTable& t) {
  const std::size_t n = t.size();
  if (n == 0) throw Error(ErrorKind::kNoRationalPoints, "the surface has no rational points");
  RelationSet rs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint32_t r = t.third(i, j);
      if (r == PointTable::kNone || r == i || r == j || r < j) continue;
      rs.secant_cycles.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), r});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = static_cast<std::uint32_t>(i);
    for (std::uint32_t r : t.tangent_residuals(i)) {
      Triple tr{p, p, r};
      std::sort(tr.begin(), tr.end());
      rs.secant_cycles.push_back(tr);
    }
    if (t.flex_line_count(i) > 0) rs.secant_cycles.push_back({p, p, p});
  }
  for (const Line3& l : lines_on_surface(t.surface(), 1).lines) {
    std::vector<std::uint32_t> pts;
    for (const ProjPoint& p : points_on_line(t.field(), l)) pts.push_back(static_cast<std::uint32_t>(t.index_of(p)));
    rs.contained_lines.push_back(std::move(pts));
  }
  SparseRow g0;
  if (!rs.secant_cycles.empty()) {
    g0 = triple_row(rs.secant_cycles.front());
  } else if (!rs.contained_lines.empty()) {
    g0 = {{rs.contained_lines.front().front(), 3}};
  }
  for (const Triple& tr : rs.secant_cycles) {
    SparseRow row = merge(triple_row(tr), g0, -1);
    if (!row.empty()) rs.rows.push_back(std::move(row));
  }
  for (const auto& pts : rs.contained_lines) {
    const std::uint32_t base = pts.front();
    for (std::size_t k = 1; k < pts.size(); ++k) rs.rows.push_back({{pts[k], 1}, {base, -1}});
    SparseRow row = merge({{base, 3}}, g0, -1);
    if (!row.empty()) rs.rows.push_back(std::move(row));
  }
  return rs;
}

bool GroupStructure::h0_exponent_divides(long n) const {
  if (h0_rank != 0) return false;
  return std::all_of(invariant_factors.begin(), invariant_factors.end(),
                     [&](const mpz_class& d) { return n % d == 0; });
}

nlohmann::json GroupStructure::to_json() const {
  nlohmann::json j;
  j["points"] = points;
  j["relations"] = relations;
  j["free_rank"] = free_rank;
  nlohmann::json f = nlohmann::json::array();
  for (const auto& d : invariant_factors) f.push_back(mpz_json(d));
  j["invariant_factors"] = f;
  j["h0_rank"] = h0_rank;
  j["h0_dim_mod2"] = h0_dim_mod2;
  j["h0_dim_mod3"] = h0_dim_mod3;
  j["h0_two_torsion_dim"] = h0_two_torsion_dim;
  j["h0_trivial"] = h0_trivial();
  return j;
}

HsPresentation::HsPresentation(const PointTable& t)
    : table_(&t), relations_(relation_rows(t)), lattice_(t.size()) {
  for (const SparseRow& row : relations_.rows) lattice_.insert(row);
}

GroupStructure HsPresentation::structure() const {
  GroupStructure g;
  g.points = table_->size();
  g.relations = relations_.rows.size();
  const auto [free, factors] = lattice_.quotient();
  g.free_rank = free;
  g.invariant_factors = factors;
  // deg: H_S -> Z is onto and kills the torsion.
  g.h0_rank = free - 1;
  g.h0_dim_mod2 = static_cast<int>(g.h0_rank);
  g.h0_dim_mod3 = static_cast<int>(g.h0_rank);
  for (const auto& d : factors) {
    if (d % 2 == 0) {
      ++g.h0_dim_mod2;
      ++g.h0_two_torsion_dim;
    }
    if (d % 3 == 0) ++g.h0_dim_mod3;
  }
  return g;
}

HsClass HsPresentation::class_of(const SparseRow& divisor) const {
  std::vector<mpz_class> v(table_->size(), 0);
  for (const auto& [c, a] : divisor) v.at(c) += mpz_class(static_cast<long>(a));
  const auto r = lattice_.reduce(std::move(v));
  HsClass out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] != 0) out.coeffs.emplace_back(static_cast<std::uint32_t>(i), r[i]);
  }
  return out;
}

HsClass HsPresentation::class_of(std::size_t i) const { return class_of(SparseRow{{static_cast<std::uint32_t>(i), 1}}); }

HsClass HsPresentation::class_of(const ProjPoint& p) const { return class_of(table_->index_of(p)); }

HsClass HsPresentation::class_diff(const ProjPoint& p, const ProjPoint& q) const {
  const auto i = static_cast<std::uint32_t>(table_->index_of(p));
  const auto j = static_cast<std::uint32_t>(table_->index_of(q));
  if (i == j) return {};
  return class_of(SparseRow{{i, 1}, {j, -1}});
}

bool HsPresentation::order_divides(const SparseRow& divisor, long n) const {
  SparseRow scaled = divisor;
  for (auto& [c, a] : scaled) a *= n;
  return class_of(scaled).is_zero();
}

bool HsPresentation::differences_generate_h0(const std::vector<std::size_t>& b, std::size_t p0) const {
  HermiteLattice l = lattice_;
  for (std::size_t i : b) {
    if (i != p0) l.insert(SparseRow{{static_cast<std::uint32_t>(i), 1}, {static_cast<std::uint32_t>(p0), -1}});
  }
  const auto [free, factors] = l.quotient();
  return free == 1 && factors.empty();
}

nlohmann::json TernaryBoundReport::to_json(const GF& f) const {
  nlohmann::json j;
  j["p0"] = cubsurf::to_json(f, p0);
  j["dim_mod2"] = dim_mod2;
  j["dim_mod3"] = dim_mod3;
  j["r"] = r ? nlohmann::json(*r) : nlohmann::json(nullptr);
  j["consistent"] = consistent;
  j["generation_checks"] = generation_checks;
  j["generation_failures"] = generation_failures;
  return j;
}

TernaryBoundReport ternary_bound_check(const HsPresentation& h, int r_max, std::uint64_t budget,
                                       int singleton_samples) {
  const PointTable& t = h.table();
  std::optional<std::size_t> p0;
  for (std::size_t i = 0; i < t.size() && !p0; ++i) {
    if (classify_point(t.surface(), t.point(i)).ternary) p0 = i;
  }
  if (!p0) throw Error(ErrorKind::kNoTernaryPoint, "no rational point has a rational asymptotic line");
  TernaryBoundReport rep;
  rep.p0 = t.point(*p0);
  const GroupStructure g = h.structure();
  rep.dim_mod2 = g.h0_dim_mod2;
  rep.dim_mod3 = g.h0_dim_mod3;
  auto check_generation = [&](const std::vector<std::size_t>& b) {
    ++rep.generation_checks;
    if (!h.differences_generate_h0(b, *p0)) ++rep.generation_failures;
  };
  try {
    const MinimalGenerators mg = minimal_generators(t, r_max, budget);
    if (mg.found) {
      rep.r = mg.r;
      std::vector<std::size_t> b;
      for (const ProjPoint& p : mg.witness) b.push_back(t.index_of(p));
      if (!b.empty()) check_generation(b);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kBudgetExceeded) throw;
  }
  if (rep.r) rep.consistent = *rep.r >= rep.dim_mod2 && *rep.r >= rep.dim_mod3;
  int taken = 0;
  for (std::size_t i = 0; i < t.size() && taken < singleton_samples; ++i) {
    if (!span_closure(t, std::vector<std::size_t>{i}).is_everything()) continue;
    ++taken;
    check_generation({i});
  }
  return rep;
}

}  // namespace cubsurf
