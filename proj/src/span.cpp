#include "cubsurf/span.hpp"

#include <algorithm>
#include <numeric>

#include "cubsurf/error.hpp"

namespace cubsurf {
namespace {

constexpr std::size_t kDenseLimit = 2048;

std::vector<std::size_t> line_indices(const PointTable& t, const Line3& l) {
  std::vector<std::size_t> out;
  for (const ProjPoint& p : points_on_line(t.field(), l)) out.push_back(t.index_of(p));
  return out;
}

bool subset_of(const std::vector<std::size_t>& xs, const std::vector<bool>& member) {
  return std::all_of(xs.begin(), xs.end(), [&](std::size_t i) { return member[i]; });
}

nlohmann::json point_list_json(const PointTable& t, const std::vector<std::size_t>& idx) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i : idx) out.push_back(to_json(t.field(), t.point(i)));
  return out;
}

}  // namespace

PointTable::PointTable(CubicForm s) : surface_(std::move(s)) {
  const GF& f = surface_.field();
  points_ = surface_points(surface_);
  gradients_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    gradients_.push_back(surface_.gradient(points_[i].x));
    if (is_zero_vec(f, gradients_.back())) {
      throw Error(ErrorKind::kSingularPoint, "surface has a singular rational point");
    }
    index_.emplace(points_[i], static_cast<std::uint32_t>(i));
  }
  tangents_.resize(points_.size());
  flex_lines_.assign(points_.size(), 0);
  const std::size_t n = points_.size();
  if (n <= kDenseLimit) {
    third_.assign(n * n, kNone);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint32_t r = compute_third(i, j);
        third_[i * n + j] = r;
        third_[j * n + i] = r;
      }
    }
  }
}

std::optional<std::size_t> PointTable::find(const ProjPoint& p) const {
  const auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PointTable::index_of(const ProjPoint& p) const {
  const auto i = find(p);
  if (!i) throw Error(ErrorKind::kPointNotOnSurface, "point is not an F_q-point of the surface");
  return *i;
}

std::uint32_t PointTable::compute_third(std::size_t i, std::size_t j) const {
  const GF& f = field();
  // F(sP + tQ) = st(a s + b t) with a = grad F(P).Q, b = grad F(Q).P.
  const Elem a = dot(f, gradients_[i], points_[j].x);
  const Elem b = dot(f, gradients_[j], points_[i].x);
  if (f.is_zero(a) && f.is_zero(b)) return kNone;
  const Vec4 r = combine(f, b, points_[i].x, f.neg(a), points_[j].x);
  return index_.at(normalize(f, r));
}

std::uint32_t PointTable::third(std::size_t i, std::size_t j) const {
  if (i == j) throw Error(ErrorKind::kEqualPoints, "third point needs two distinct points");
  if (!third_.empty()) return third_[i * points_.size() + j];
  return compute_third(i, j);
}

const std::vector<std::uint32_t>& PointTable::tangent_residuals(std::size_t i) const {
  auto& slot = tangents_[i];
  if (slot) return *slot;
  const GF& f = field();
  const ProjPoint& p = points_[i];
  const TangentCone tc = tangent_cone(surface_, p);
  std::vector<std::uint32_t> out;
  int flex = 0;
  auto visit = [&](const Vec4& v) {
    // F(sP + tV) = t^2 (Q(V) s + F(V) t) on the tangent plane.
    const Elem qv = dot(f, surface_.gradient(v), p.x);
    if (f.is_zero(qv)) {
      if (!f.is_zero(surface_.eval(v))) ++flex;
      return;
    }
    const Vec4 r = combine(f, surface_.eval(v), p.x, f.neg(qv), v);
    out.push_back(index_.at(normalize(f, r)));
  };
  for (const Elem beta : f.elements()) visit(combine(f, f.one(), tc.v1, beta, tc.v2));
  visit(tc.v2);
  flex_lines_[i] = flex;
  slot = std::move(out);
  return *slot;
}

int PointTable::flex_line_count(std::size_t i) const {
  tangent_residuals(i);
  return flex_lines_[i];
}

std::vector<std::size_t> SpanState::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (member[i]) out.push_back(i);
  }
  return out;
}

SpanState span_closure(const PointTable& t, const std::vector<std::size_t>& generators) {
  SpanState st;
  st.member.assign(t.size(), false);
  std::vector<std::size_t> current;
  std::vector<std::size_t> frontier;
  for (std::size_t g : generators) {
    if (g >= t.size()) throw Error(ErrorKind::kPointNotOnSurface, "generator index out of range");
    if (!st.member[g]) {
      st.member[g] = true;
      frontier.push_back(g);
    }
  }
  st.count = frontier.size();
  st.sizes.push_back(st.count);
  std::vector<bool> added(t.size(), false);
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    auto offer = [&](std::uint32_t r) {
      if (r == PointTable::kNone || st.member[r] || added[r]) return;
      added[r] = true;
      next.push_back(r);
    };
    // Pairs (frontier, older points) and (frontier, frontier).
    for (std::size_t a = 0; a < frontier.size(); ++a) {
      const std::size_t p = frontier[a];
      for (std::size_t q : current) {
        ++st.lines_examined;
        offer(t.third(p, q));
      }
      for (std::size_t b = a + 1; b < frontier.size(); ++b) {
        ++st.lines_examined;
        offer(t.third(p, frontier[b]));
      }
      const auto& tang = t.tangent_residuals(p);
      st.lines_examined += tang.size();
      for (std::uint32_t r : tang) offer(r);
    }
    current.insert(current.end(), frontier.begin(), frontier.end());
    for (std::size_t r : next) {
      st.member[r] = true;
      added[r] = false;
    }
    st.count += next.size();
    if (next.empty()) break;
    ++st.generations;
    st.sizes.push_back(st.count);
    frontier = std::move(next);
  }
  return st;
}

SpanState span_closure(const PointTable& t, const std::vector<ProjPoint>& generators) {
  std::vector<std::size_t> idx;
  idx.reserve(generators.size());
  for (const ProjPoint& p : generators) idx.push_back(t.index_of(p));
  return span_closure(t, idx);
}

bool is_span_closed(const PointTable& t, const std::vector<bool>& member) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!member[i]) continue;
    for (std::uint32_t r : t.tangent_residuals(i)) {
      if (!member[r]) return false;
    }
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (!member[j]) continue;
      const std::uint32_t r = t.third(i, j);
      if (r != PointTable::kNone && !member[r]) return false;
    }
  }
  return true;
}

nlohmann::json to_json(const PointTable& t, const SpanState& s) {
  nlohmann::json j;
  j["generations"] = s.generations;
  j["sizes"] = s.sizes;
  j["closure_size"] = s.count;
  j["surface_points"] = t.size();
  j["spans_everything"] = s.is_everything();
  j["lines_examined"] = s.lines_examined;
  j["closure"] = point_list_json(t, s.indices());
  return j;
}

bool SpanLemmaReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.failures == 0; });
}

LemmaCheck check_single_point_generation(const PointTable& t, const std::vector<Line3>& rational_lines) {
  const GF& f = t.field();
  LemmaCheck out{"spn(P) = S(K) for non-Eckardt P on a skew rational pair", 0, 0, std::nullopt};
  std::vector<bool> on_skew(rational_lines.size(), false);
  for (std::size_t a = 0; a < rational_lines.size(); ++a) {
    for (std::size_t b = a + 1; b < rational_lines.size(); ++b) {
      if (skew(f, rational_lines[a], rational_lines[b])) on_skew[a] = on_skew[b] = true;
    }
  }
  std::vector<bool> done(t.size(), false);
  for (std::size_t a = 0; a < rational_lines.size(); ++a) {
    if (!on_skew[a]) continue;
    for (std::size_t i : line_indices(t, rational_lines[a])) {
      if (done[i]) continue;
      done[i] = true;
      if (classify_point(t.surface(), t.point(i)).kind == PointKind::kEckardt) continue;
      ++out.cases;
      const SpanState st = span_closure(t, std::vector<std::size_t>{i});
      if (!st.is_everything()) {
        ++out.failures;
        if (!out.counterexample) {
          out.counterexample = nlohmann::json{{"point", to_json(f, t.point(i))}, {"closure_size", st.count}};
        }
      }
    }
  }
  return out;
}

SpanLemmaReport verify_span_lemmas(const PointTable& t, const std::vector<Line3>& lines) {
  const GF& f = t.field();
  if (f.size() < 13) throw Error(ErrorKind::kHypothesisFailed, "the span lemmas need at least 13 field elements");
  if (lines.empty()) throw Error(ErrorKind::kConfigurationAbsent, "no rational line on the surface");
  const CubicForm& s = t.surface();
  SpanLemmaReport rep;

  LemmaCheck line_check{"l(K) in Gamma_P(K) in spn(P)", 0, 0, std::nullopt};
  std::vector<std::optional<SpanState>> single(t.size());
  auto spn_of = [&](std::size_t i) -> const SpanState& {
    if (!single[i]) single[i] = span_closure(t, std::vector<std::size_t>{i});
    return *single[i];
  };
  for (const Line3& l : lines) {
    const auto pts = line_indices(t, l);
    for (std::size_t i : pts) {
      const ProjPoint& p = t.point(i);
      if (classify_point(s, p).kind == PointKind::kEckardt) continue;
      ++line_check.cases;
      const Plane3 tp = tangent_plane(s, p);
      std::vector<std::size_t> gamma;
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (f.is_zero(dot(f, tp.c, t.point(k).x))) gamma.push_back(k);
      }
      std::vector<bool> in_gamma(t.size(), false);
      for (std::size_t k : gamma) in_gamma[k] = true;
      const SpanState& st = spn_of(i);
      const bool ok = subset_of(pts, in_gamma) && subset_of(gamma, st.member);
      if (!ok) {
        ++line_check.failures;
        if (!line_check.counterexample) {
          line_check.counterexample = nlohmann::json{{"line", to_json(f, l)}, {"point", to_json(f, p)}};
        }
      }
    }
  }
  rep.checks.push_back(std::move(line_check));

  LemmaCheck skew_check{"l'(K) in spn(l(K)) for skew l, l'", 0, 0, std::nullopt};
  LemmaCheck pair_check{"spn(l1(K) u l2(K)) = S(K) for skew l1, l2", 0, 0, std::nullopt};
  std::vector<SpanState> line_span;
  line_span.reserve(lines.size());
  for (const Line3& l : lines) line_span.push_back(span_closure(t, line_indices(t, l)));
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = 0; b < lines.size(); ++b) {
      if (a == b || !skew(f, lines[a], lines[b])) continue;
      ++skew_check.cases;
      if (!subset_of(line_indices(t, lines[b]), line_span[a].member)) {
        ++skew_check.failures;
        if (!skew_check.counterexample) {
          skew_check.counterexample = nlohmann::json{{"l", to_json(f, lines[a])}, {"l_prime", to_json(f, lines[b])}};
        }
      }
      if (b < a) continue;
      ++pair_check.cases;
      auto gens = line_indices(t, lines[a]);
      const auto more = line_indices(t, lines[b]);
      gens.insert(gens.end(), more.begin(), more.end());
      if (!span_closure(t, gens).is_everything()) {
        ++pair_check.failures;
        if (!pair_check.counterexample) {
          pair_check.counterexample = nlohmann::json{{"l1", to_json(f, lines[a])}, {"l2", to_json(f, lines[b])}};
        }
      }
    }
  }
  rep.checks.push_back(std::move(skew_check));
  rep.checks.push_back(std::move(pair_check));
  rep.checks.push_back(check_single_point_generation(t, lines));
  return rep;
}

SpanLemmaReport verify_span_lemmas(const PointTable& t) {
  return verify_span_lemmas(t, lines_on_surface(t.surface(), 1).lines);
}

MinimalGenerators minimal_generators(const PointTable& t, int r_max, std::uint64_t budget) {
  MinimalGenerators out;
  const std::size_t n = t.size();
  if (n == 0) {
    out.found = true;
    return out;
  }
  std::uint64_t used = 0;
  auto charge = [&] {
    if (++used > budget) throw Error(ErrorKind::kBudgetExceeded, "minimal generator search exceeded its budget");
  };
  std::vector<SpanState> single;
  single.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    charge();
    single.push_back(span_closure(t, std::vector<std::size_t>{i}));
    if (single.back().is_everything()) {
      out.found = true;
      out.r = 1;
      out.witness = {t.point(i)};
      return out;
    }
  }
  // Seeding with the union of singleton spans gives the same closure.
  auto union_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> seed;
    std::vector<bool> seen(n, false);
    for (std::size_t i : idx) {
      for (std::size_t k : single[i].indices()) {
        if (!seen[k]) {
          seen[k] = true;
          seed.push_back(k);
        }
      }
    }
    return seed;
  };
  auto redundant = [&](const std::vector<std::size_t>& idx) {
    for (std::size_t a : idx) {
      for (std::size_t b : idx) {
        if (a != b && single[a].member[b]) return true;
      }
    }
    return false;
  };
  for (int r = 2; r <= r_max; ++r) {
    if (static_cast<std::size_t>(r) > n) break;
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      if (!redundant(idx)) {
        charge();
        if (span_closure(t, union_of(idx)).is_everything()) {
          out.found = true;
          out.r = r;
          for (std::size_t i : idx) out.witness.push_back(t.point(i));
          return out;
        }
      }
      int pos = r - 1;
      while (pos >= 0 && idx[pos] == n - r + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int k = pos + 1; k < r; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return out;
}

}  // namespace cubsurf
