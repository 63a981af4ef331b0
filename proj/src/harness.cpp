#include "cubsurf/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <set>

#include "cubsurf/error.hpp"
#include "cubsurf/field/modular.hpp"
#include "cubsurf/hsgroup.hpp"
#include "cubsurf/intmat.hpp"
#include "cubsurf/planecubic.hpp"
#include "cubsurf/reduction.hpp"
#include "cubsurf/span.hpp"

namespace cubsurf {
namespace {

nlohmann::json surface_json(const CubicForm& s) {
  return {{"q", s.field().size()}, {"coeffs", s.to_json()}};
}

CubicForm random_transform(const CubicForm& s, Rng& rng) {
  const GF& f = s.field();
  for (;;) {
    std::array<Vec4, 4> cols;
    for (auto& c : cols) {
      for (auto& e : c) e = f.from_index(rng() % f.size());
    }
    if (rank(f, {cols.begin(), cols.end()}) == 4) return transform_cubic(s, cols);
  }
}

CubicForm random_supported(const GFPtr& f, Rng& rng, int max_attempts, const std::function<bool(const Exponent&)>& keep) {
  const auto& mons = cubic_monomials();
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::array<Elem, 20> c{};
    for (std::size_t i = 0; i < 20; ++i) {
      if (keep(mons[i])) c[i] = f->from_index(rng() % f->size());
    }
    CubicForm s(f, c);
    if (s.is_zero() || !is_smooth(s)) continue;
    return random_transform(s, rng);
  }
  throw Error(ErrorKind::kBudgetExceeded, "no smooth surface within the attempt budget");
}

bool has_skew_pair(const GF& f, const std::vector<Line3>& lines) {
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      if (skew(f, lines[a], lines[b])) return true;
    }
  }
  return false;
}

struct Sample {
  std::string label;
  GFPtr field;
  CubicForm surface;
  std::vector<Line3> lines;
  std::unique_ptr<PointTable> table;
  std::unique_ptr<HsPresentation> hs;

  Sample(std::string l, CubicForm s)
      : label(std::move(l)), field(s.field_ptr()), surface(std::move(s)), lines(lines_on_surface(surface, 1).lines) {}

  const PointTable& points() {
    if (!table) table = std::make_unique<PointTable>(surface);
    return *table;
  }
  const HsPresentation& presentation() {
    if (!hs) hs = std::make_unique<HsPresentation>(points());
    return *hs;
  }
};

// Everything a run shares between checks, built on first use.
struct Context {
  const ExperimentConfig& cfg;
  std::optional<SurfaceLines> example_lines;
  std::optional<std::vector<std::unique_ptr<Sample>>> skew;
  std::optional<std::vector<std::unique_ptr<Sample>>> one_line;

  Rng rng_for(std::uint64_t offset) const { return Rng(cfg.seed * 1000003ULL + offset); }

  const SurfaceLines& lines_f64() {
    if (!example_lines) example_lines = lines_on_surface(eckardt_example(), 6);
    return *example_lines;
  }

  std::vector<std::unique_ptr<Sample>>& skew_corpus() {
    if (skew) return *skew;
    skew.emplace();
    for (unsigned q : cfg.skew_fields) {
      const GFPtr f = field_of_order(q);
      Rng rng = rng_for(100 + q);
      int made = 0;
      if (q == 13) {
        skew->push_back(std::make_unique<Sample>("Fermat/F_13", fermat(f)));
        ++made;
      }
      while (made < cfg.surfaces_per_field) {
        auto s = std::make_unique<Sample>("F_" + std::to_string(q) + " #" + std::to_string(made),
                                          random_surface_with_skew_pair(f, rng));
        if (!has_skew_pair(*f, s->lines)) continue;
        skew->push_back(std::move(s));
        ++made;
      }
    }
    return *skew;
  }

  std::vector<std::unique_ptr<Sample>>& one_line_corpus() {
    if (one_line) return *one_line;
    one_line.emplace();
    Rng rng = rng_for(200);
    const std::array<GFPtr, 2> fields{field_of_order(7), field_of_order(13)};
    int made = 0;
    int attempts = 0;
    while (made < cfg.one_line_surfaces) {
      if (++attempts > 100000) throw Error(ErrorKind::kBudgetExceeded, "too few one-line surfaces");
      const GFPtr& f = fields[static_cast<std::size_t>(made % 2)];
      auto s = std::make_unique<Sample>("F_" + std::to_string(f->size()) + " one-line #" + std::to_string(made),
                                        random_surface_with_line(f, rng));
      if (s->lines.size() != 1) continue;
      one_line->push_back(std::move(s));
      ++made;
    }
    return *one_line;
  }
};

CheckResult make_result(std::string name) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::kPass;
  return r;
}

void fail(CheckResult& r, const std::string& reason, nlohmann::json witness) {
  if (r.status == CheckStatus::kFail) return;
  r.status = CheckStatus::kFail;
  r.reason = reason;
  r.witness = std::move(witness);
}

CheckResult check_lines_structure(Context& ctx) {
  CheckResult r = make_result("lines_structure");
  const SurfaceLines& sl = ctx.lines_f64();
  r.details["field"] = sl.field->size();
  r.details["lines"] = sl.lines.size();
  if (sl.lines.size() != 27) {
    fail(r, "expected 27 lines", {{"lines", sl.lines.size()}});
    return r;
  }
  const auto inc = line_incidence(*sl.field, sl.lines);
  for (std::size_t i = 0; i < inc.size(); ++i) {
    if (inc[i].neighbours != 10 || inc[i].coplanar_pairs != 5 || !inc[i].pairs_partition) {
      fail(r, "line without the 10-neighbour / 5-pair structure",
           {{"line", to_json(*sl.field, sl.lines[i])},
            {"neighbours", inc[i].neighbours},
            {"coplanar_pairs", inc[i].coplanar_pairs}});
    }
    if (!intersect_line(sl.surface, sl.lines[i]).contained) {
      fail(r, "reported line is not on the surface", {{"line", to_json(*sl.field, sl.lines[i])}});
    }
  }
  return r;
}

CheckResult check_eckardt_census(Context& ctx) {
  CheckResult r = make_result("eckardt_census");
  const SurfaceLines& sl = ctx.lines_f64();
  const GF& f = *sl.field;
  std::set<ProjPoint> eckardt;
  std::map<int, int> distribution;
  for (const Line3& l : sl.lines) {
    const GaussOnLine g = gauss_on_line(sl.surface, l);
    ++distribution[static_cast<int>(g.eckardt_points.size())];
    eckardt.insert(g.eckardt_points.begin(), g.eckardt_points.end());
  }
  // Second route: points where three of the lines meet.
  std::map<ProjPoint, std::set<std::size_t>> on_lines;
  for (std::size_t a = 0; a < sl.lines.size(); ++a) {
    for (std::size_t b = a + 1; b < sl.lines.size(); ++b) {
      if (const auto p = intersection(f, sl.lines[a], sl.lines[b])) {
        on_lines[*p].insert(a);
        on_lines[*p].insert(b);
      }
    }
  }
  std::size_t triple = 0;
  for (const auto& [p, ls] : on_lines) triple += ls.size() == 3 ? 1 : 0;
  nlohmann::json dist = nlohmann::json::object();
  for (const auto& [k, v] : distribution) dist[std::to_string(k)] = v;
  r.details["eckardt_points"] = eckardt.size();
  r.details["eckardt_by_line_meetings"] = triple;
  r.details["eckardt_per_line"] = dist;
  const bool ok = eckardt.size() == 13 && triple == 13 && distribution[5] == 3 && distribution[1] == 24 &&
                  distribution.size() == 2;
  if (!ok) fail(r, "Eckardt census differs from 13 points and 3 x 5 + 24 x 1", r.details);
  return r;
}

CheckResult check_single_point_generation(Context& ctx) {
  CheckResult r = make_result("single_point_generation");
  std::map<std::string, int> per_field;
  int points_tested = 0;
  double worst = 0;
  for (auto& s : ctx.skew_corpus()) {
    const auto t0 = std::chrono::steady_clock::now();
    const LemmaCheck lc = check_single_point_generation(s->points(), s->lines);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, secs);
    ++per_field["F_" + std::to_string(s->field->size())];
    points_tested += lc.cases;
    if (lc.cases == 0) fail(r, "no non-Eckardt point on a skew pair", {{"surface", surface_json(s->surface)}});
    if (lc.failures > 0) {
      fail(r, "a point failed to span S(F_q)",
           {{"surface", surface_json(s->surface)},
            {"counterexample", lc.counterexample ? *lc.counterexample : nlohmann::json(nullptr)}});
    }
    if (secs > 60.0) fail(r, "surface exceeded one minute", {{"surface", s->label}, {"seconds", secs}});
  }
  r.details["surfaces_per_field"] = per_field;
  r.details["points_tested"] = points_tested;
  if (ctx.cfg.timings) r.details["worst_surface_seconds"] = worst;
  for (unsigned q : ctx.cfg.skew_fields) {
    if (per_field["F_" + std::to_string(q)] < 5) fail(r, "fewer than five surfaces over a field", r.details);
  }
  return r;
}

CheckResult check_span_closure_properties(Context& ctx) {
  CheckResult r = make_result("span_closure_properties");
  Rng rng = ctx.rng_for(300);
  int cases = 0;
  for (unsigned q : {4U, 7U, 13U}) {
    const GFPtr f = field_of_order(q);
    for (int k = 0; k < 3; ++k) {
      const PointTable t(random_smooth_surface(f, rng));
      const std::size_t n = t.size();
      for (int it = 0; it < 12; ++it) {
        std::vector<std::size_t> small, big;
        const std::size_t sz = 1 + rng() % 3;
        for (std::size_t i = 0; i < sz; ++i) small.push_back(rng() % n);
        big = small;
        for (std::size_t i = 0; i < 1 + rng() % 3; ++i) big.push_back(rng() % n);
        const SpanState a = span_closure(t, small);
        const SpanState b = span_closure(t, big);
        const SpanState again = span_closure(t, a.indices());
        ++cases;
        bool ok = again.member == a.member && is_span_closed(t, a.member);
        for (std::size_t i : small) ok = ok && a.member[i];
        for (std::size_t i = 0; i < n; ++i) ok = ok && (!a.member[i] || b.member[i]);
        if (!ok) {
          nlohmann::json gens = nlohmann::json::array();
          for (std::size_t i : small) gens.push_back(to_json(t.field(), t.point(i)));
          fail(r, "closure is not extensive, monotone, idempotent and closed",
               {{"surface", surface_json(t.surface())}, {"generators", gens}});
        }
      }
    }
  }
  r.details["cases"] = cases;
  return r;
}

CheckResult check_h0_structure(Context& ctx) {
  CheckResult r = make_result("h0_structure");
  int skew_checked = 0;
  for (auto& s : ctx.skew_corpus()) {
    const GroupStructure g = s->presentation().structure();
    ++skew_checked;
    if (!g.h0_trivial()) fail(r, "H^0 is not zero with a skew pair", {{"surface", surface_json(s->surface)}, {"structure", g.to_json()}});
  }
  int one_line_checked = 0;
  std::map<int, int> two_torsion;
  for (auto& s : ctx.one_line_corpus()) {
    const GroupStructure g = s->presentation().structure();
    ++one_line_checked;
    ++two_torsion[g.h0_two_torsion_dim];
    if (!g.h0_exponent_divides(2)) {
      fail(r, "H^0 has an element of order other than 1 or 2",
           {{"surface", surface_json(s->surface)}, {"structure", g.to_json()}});
    }
  }
  nlohmann::json tt = nlohmann::json::object();
  for (const auto& [k, v] : two_torsion) tt[std::to_string(k)] = v;
  r.details["skew_pair_surfaces"] = skew_checked;
  r.details["one_line_surfaces"] = one_line_checked;
  r.details["one_line_h0_dim_f2"] = tt;
  if (one_line_checked < 10) fail(r, "fewer than ten one-line surfaces", r.details);
  return r;
}

CheckResult check_bound_consistency(Context& ctx) {
  CheckResult r = make_result("bound_consistency");
  int completed = 0, no_ternary = 0, unfinished = 0, violations = 0, generation_failures = 0;
  std::map<int, int> r_values;
  auto run = [&](const HsPresentation& h, const CubicForm& s) {
    try {
      const TernaryBoundReport rep = ternary_bound_check(h, ctx.cfg.r_max, ctx.cfg.generator_budget, 4);
      generation_failures += rep.generation_failures;
      if (rep.generation_failures > 0) {
        fail(r, "differences [P - P0] over a generating set miss part of H^0",
             {{"surface", surface_json(s)}, {"report", rep.to_json(s.field())}});
      }
      if (!rep.r) {
        ++unfinished;
        return;
      }
      ++completed;
      ++r_values[*rep.r];
      if (!rep.consistent) {
        ++violations;
        fail(r, "r(S, F_q) below dim H^0 / p H^0", {{"surface", surface_json(s)}, {"report", rep.to_json(s.field())}});
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNoTernaryPoint) throw;
      ++no_ternary;
    }
  };
  for (auto& s : ctx.skew_corpus()) run(s->presentation(), s->surface);
  for (auto& s : ctx.one_line_corpus()) run(s->presentation(), s->surface);
  Rng rng = ctx.rng_for(400);
  for (unsigned q : {2U, 3U, 4U, 5U}) {
    const GFPtr f = field_of_order(q);
    for (int k = 0; k < ctx.cfg.small_field_surfaces; ++k) {
      const PointTable t(random_smooth_surface(f, rng));
      const HsPresentation h(t);
      run(h, t.surface());
    }
  }
  nlohmann::json rv = nlohmann::json::object();
  for (const auto& [k, v] : r_values) rv[std::to_string(k)] = v;
  r.details["completed"] = completed;
  r.details["skipped_no_ternary_point"] = no_ternary;
  r.details["search_unfinished"] = unfinished;
  r.details["violations"] = violations;
  r.details["generation_failures"] = generation_failures;
  r.details["r_values"] = rv;
  if (completed == 0) fail(r, "minimal generator search never completed", r.details);
  return r;
}

CheckResult check_snf_recomposition(Context& ctx) {
  CheckResult r = make_result("snf_recomposition");
  Rng rng = ctx.rng_for(500);
  int cases = 0;
  for (int it = 0; it < 200; ++it) {
    const std::size_t rows = 1 + rng() % 7;
    const std::size_t cols = 1 + rng() % 7;
    const long bound = it % 3 == 0 ? 1000 : 9;
    IntMatrix m(rows, std::vector<mpz_class>(cols));
    for (auto& row : m) {
      for (auto& x : row) x = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
    }
    const SmithForm s = smith_normal_form(m);
    ++cases;
    bool ok = multiply(multiply(s.u, m), s.v) == s.d && abs(determinant(s.u)) == 1 && abs(determinant(s.v)) == 1;
    for (std::size_t i = 0; i < rows && ok; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (i != j && s.d[i][j] != 0) ok = false;
      }
    }
    const auto diag = s.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size() && ok; ++i) {
      if (diag[i] == 0 ? diag[i + 1] != 0 : diag[i + 1] % diag[i] != 0) ok = false;
    }
    if (!ok) {
      nlohmann::json mj = nlohmann::json::array();
      for (const auto& row : m) {
        nlohmann::json rj = nlohmann::json::array();
        for (const auto& x : row) rj.push_back(x.get_si());
        mj.push_back(rj);
      }
      fail(r, "u m v != d or the diagonal does not divide", {{"matrix", mj}});
    }
  }
  r.details["matrices"] = cases;
  return r;
}

CheckResult check_pic_quotients(Context& ctx) {
  CheckResult r = make_result("pic_quotients");
  int mod3 = 0, mod2 = 0, division = 0;
  for (std::uint64_t p = 5; p <= static_cast<std::uint64_t>(ctx.cfg.pic_bound); ++p) {
    if (!field::is_prime(p)) continue;
    const PrimeCondition pc = prime_condition(p);
    const TwoDivision td = two_division_check(p);
    ++division;
    if (!td.agree() || (pc.cond_a && pc.cond_b) != pc.t3_minus_2_splits) {
      fail(r, "4x^3 - 27 splitting disagrees with the prime conditions", {{"p", p}});
    }
    if (!pc.cond_a) continue;
    const PicQuotient q3 = pic_mod(p, 3);
    ++mod3;
    if (q3.dim() != 2 || !q3.every_class_represented()) fail(r, "Pic^0/3 is not (Z/3)^2 with point classes", q3.to_json());
    if (!pc.cond_b) continue;
    const PicQuotient q2 = pic_mod(p, 2);
    ++mod2;
    if (q2.dim() != 2 || !q2.every_class_represented()) fail(r, "Pic^0/2 is not (Z/2)^2 with point classes", q2.to_json());
  }
  r.details["primes_mod3"] = mod3;
  r.details["primes_mod2"] = mod2;
  r.details["primes_division_polynomial"] = division;
  return r;
}

CheckResult check_group_axioms(Context&) {
  CheckResult r = make_result("group_axioms");
  int triples = 0;
  for (std::uint64_t p = 2; p <= 31; ++p) {
    if (!field::is_prime(p) || p == 3) continue;
    const PlaneCubic c(p);
    const auto& pts = c.points();
    for (const auto& a : pts) {
      if (c.add(a, c.origin()) != a || c.add(a, c.neg(a)) != c.origin()) {
        fail(r, "identity or inverse fails", {{"p", p}, {"P", c.to_json(a)}});
      }
      for (const auto& b : pts) {
        const CurvePoint ab = c.add(a, b);
        if (ab != c.add(b, a)) fail(r, "addition is not commutative", {{"p", p}, {"P", c.to_json(a)}, {"Q", c.to_json(b)}});
        for (const auto& d : pts) {
          ++triples;
          if (c.add(ab, d) != c.add(a, c.add(b, d))) {
            fail(r, "addition is not associative",
                 {{"p", p}, {"P", c.to_json(a)}, {"Q", c.to_json(b)}, {"R", c.to_json(d)}});
          }
        }
      }
    }
  }
  r.details["triples"] = triples;
  return r;
}

std::vector<RationalSurfacePoint> cycle_points(Family f, long m, long h, long line_height) {
  SearchOptions opt;
  opt.include_line_points = false;
  auto pts = point_search(f, m, h, opt);
  if (f == Family::kS) {
    for (const auto& p : point_search(f, m, line_height)) {
      if (p.x[2] == 0 && p.x[0] == -p.x[1]) pts.push_back(p);
    }
  }
  return pts;
}

CheckResult check_relation_preservation(Context& ctx) {
  CheckResult r = make_result("relation_preservation");
  const std::array<std::pair<Family, long>, 2> surfaces{{{Family::kS, 31}, {Family::kSPrime, 93}}};
  for (const auto& [fam, m] : surfaces) {
    const Reducer red(fam, m, 31);
    const auto pts = cycle_points(fam, m, ctx.cfg.relation_height, ctx.cfg.line_point_height);
    const SweepReport sw = line_relation_sweep(red, pts, ctx.cfg.max_pairs);
    const std::string key = family_name(fam) + " M=" + std::to_string(m);
    nlohmann::json d = sw.to_json();
    d["points"] = pts.size();
    d.erase("counterexample");
    r.details[key] = d;
    auto count = [&](const char* name) {
      const auto it = sw.by_case.find(name);
      return it == sw.by_case.end() ? std::uint64_t{0} : it->second;
    };
    const std::uint64_t good = count("good_reduction");
    const std::uint64_t bad = count("bad_reduction_newton") + count("bad_reduction_plane_z0") + count("bad_reduction_cone");
    if (sw.failures > 0) fail(r, "sum of psi is nonzero on a line cycle", *sw.counterexample);
    if (sw.inconsistent > 0) fail(r, "a cycle did not show the structure of its case", d);
    if (good == 0 || bad == 0) fail(r, "a reduction branch was not exercised", d);
    if (sw.cycles >= ctx.cfg.max_pairs) fail(r, "pair budget cut the sweep short", d);
  }
  return r;
}

CheckResult check_surjectivity_shadow(Context& ctx) {
  CheckResult r = make_result("surjectivity_shadow");
  const auto pts = point_search(Family::kS, 31, ctx.cfg.surjectivity_height);
  const Reducer red(Family::kS, 31, 31);
  const CoverageReport cov = reduction_coverage(red, pts);
  const RankBound rb = rank_lower_bound(Family::kS, 31, {31}, pts);
  r.details["points"] = pts.size();
  r.details["coverage"] = cov.to_json();
  r.details["rank_bound"] = rb.to_json();
  if (cov.classes_hit_by_psi < cov.classes_hit_by_curve) fail(r, "psi misses a class met by reduced points", r.details);
  if (rb.achieved_dim < 1) fail(r, "psi is constant on the searched points", r.details);
  return r;
}

CheckResult check_del_pezzo_lines(Context&) {
  CheckResult r = make_result("del_pezzo_lines");
  for (long m : {31L, 93L}) {
    const long p = smallest_del_pezzo_prime(m);
    const DelPezzoReport d = del_pezzo_line_check(m, p);
    r.details["M=" + std::to_string(m)] = d.to_json();
    if (!d.passed()) fail(r, "a line of the del Pezzo model fails to lie on it", d.to_json());
  }
  return r;
}

using CheckFn = CheckResult (*)(Context&);

const std::map<std::string, std::vector<std::pair<std::string, CheckFn>>>& suites() {
  static const std::map<std::string, std::vector<std::pair<std::string, CheckFn>>> s{
      {"geometry", {{"lines_structure", check_lines_structure}, {"eckardt_census", check_eckardt_census}}},
      {"span",
       {{"single_point_generation", check_single_point_generation},
        {"span_closure_properties", check_span_closure_properties}}},
      {"hs",
       {{"h0_structure", check_h0_structure},
        {"bound_consistency", check_bound_consistency},
        {"snf_recomposition", check_snf_recomposition}}},
      {"pic", {{"pic_quotients", check_pic_quotients}, {"group_axioms", check_group_axioms}}},
      {"reduction",
       {{"relation_preservation", check_relation_preservation},
        {"surjectivity_shadow", check_surjectivity_shadow},
        {"del_pezzo_lines", check_del_pezzo_lines}}},
  };
  return s;
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  return {{"seed", seed},
          {"surfaces_per_field", surfaces_per_field},
          {"skew_fields", skew_fields},
          {"one_line_surfaces", one_line_surfaces},
          {"small_field_surfaces", small_field_surfaces},
          {"relation_height", relation_height},
          {"surjectivity_height", surjectivity_height},
          {"line_point_height", line_point_height},
          {"max_pairs", max_pairs},
          {"pic_bound", pic_bound},
          {"r_max", r_max},
          {"generator_budget", generator_budget},
          {"timings", timings}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (!j.is_object()) throw Error(ErrorKind::kInvalidArgument, "config must be a JSON object");
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("seed", c.seed);
    get("surfaces_per_field", c.surfaces_per_field);
    get("skew_fields", c.skew_fields);
    get("one_line_surfaces", c.one_line_surfaces);
    get("small_field_surfaces", c.small_field_surfaces);
    get("relation_height", c.relation_height);
    get("surjectivity_height", c.surjectivity_height);
    get("line_point_height", c.line_point_height);
    get("max_pairs", c.max_pairs);
    get("pic_bound", c.pic_bound);
    get("r_max", c.r_max);
    get("generator_budget", c.generator_budget);
    get("timings", c.timings);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("bad config: ") + e.what());
  }
  return c;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::kFail; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["config"] = config.to_json();
  j["passed"] = passed();
  nlohmann::json cs = nlohmann::json::object();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["status"] = to_string(c.status);
    e["details"] = c.details;
    if (!c.reason.empty()) e["reason"] = c.reason;
    if (c.witness) e["witness"] = *c.witness;
    if (config.timings) e["seconds"] = c.seconds;
    cs[c.name] = e;
  }
  j["checks"] = cs;
  return j;
}

GFPtr field_of_order(std::uint64_t q) {
  if (q < 2) throw Error(ErrorKind::kInvalidArgument, "field order must be at least 2");
  const auto ps = field::prime_factors(q);
  if (ps.size() != 1) throw Error(ErrorKind::kInvalidArgument, std::to_string(q) + " is not a prime power");
  unsigned k = 0;
  for (std::uint64_t t = q; t > 1; t /= ps[0]) ++k;
  return GF::make(ps[0], k);
}

CubicForm random_smooth_surface(const GFPtr& f, Rng& rng, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::array<Elem, 20> c;
    for (auto& e : c) e = f->from_index(rng() % f->size());
    CubicForm s(f, c);
    if (!s.is_zero() && is_smooth(s)) return s;
  }
  throw Error(ErrorKind::kBudgetExceeded, "no smooth surface within the attempt budget");
}

CubicForm random_smooth_surface(const GFPtr& f, std::uint64_t seed, int max_attempts) {
  Rng rng(seed);
  return random_smooth_surface(f, rng, max_attempts);
}

CubicForm random_surface_with_skew_pair(const GFPtr& f, Rng& rng, int max_attempts) {
  return random_supported(f, rng, max_attempts,
                          [](const Exponent& e) { return e[0] + e[1] > 0 && e[2] + e[3] > 0; });
}

CubicForm random_surface_with_line(const GFPtr& f, Rng& rng, int max_attempts) {
  return random_supported(f, rng, max_attempts, [](const Exponent& e) { return e[0] + e[1] > 0; });
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, checks] : suites()) out.push_back(name);
  out.push_back("all");
  return out;
}

VerificationReport run_suite(const std::string& name, const ExperimentConfig& config) {
  std::vector<std::pair<std::string, CheckFn>> selected;
  if (name == "all") {
    for (const auto& [suite, checks] : suites()) selected.insert(selected.end(), checks.begin(), checks.end());
  } else {
    const auto it = suites().find(name);
    if (it == suites().end()) throw Error(ErrorKind::kInvalidArgument, "unknown suite '" + name + "'");
    selected = it->second;
  }
  Context ctx{config, {}, {}, {}};
  VerificationReport rep;
  rep.suite = name;
  rep.config = config;
  for (const auto& [check_name, fn] : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult c = fn(ctx);
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(std::move(c));
  }
  std::sort(rep.checks.begin(), rep.checks.end(), [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return rep;
}

nlohmann::json scan_surfaces(std::uint64_t q, int count, std::uint64_t seed, bool with_hs) {
  const GFPtr f = field_of_order(q);
  Rng rng(seed);
  nlohmann::json rows = nlohmann::json::array();
  std::map<std::size_t, int> line_hist;
  int skew_pairs = 0;
  for (int i = 0; i < count; ++i) {
    const CubicForm s = random_smooth_surface(f, rng);
    const auto lines = lines_on_surface(s, 1).lines;
    const PointTable t(s);
    nlohmann::json row;
    row["surface"] = s.to_json();
    row["points"] = t.size();
    row["lines"] = lines.size();
    row["skew_pair"] = has_skew_pair(*f, lines);
    skew_pairs += row["skew_pair"].get<bool>() ? 1 : 0;
    ++line_hist[lines.size()];
    if (with_hs) row["hs"] = HsPresentation(t).structure().to_json();
    rows.push_back(row);
  }
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [k, v] : line_hist) hist[std::to_string(k)] = v;
  return {{"q", q}, {"count", count}, {"seed", seed}, {"surfaces", rows}, {"lines_histogram", hist},
          {"with_skew_pair", skew_pairs}};
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2); }

}  // namespace cubsurf
