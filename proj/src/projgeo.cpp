#include "cubsurf/projgeo.hpp"

#include <utility>

#include "cubsurf/error.hpp"

namespace cubsurf {
namespace {

struct Block {
  int i, j;
};
constexpr Block kBlocks[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// Free entries of a block as (row, column) pairs in digit order.
std::vector<std::pair<int, int>> free_entries(const Block& b) {
  std::vector<std::pair<int, int>> out;
  for (int c = b.i + 1; c < 4; ++c) {
    if (c != b.j) out.emplace_back(0, c);
  }
  for (int c = b.j + 1; c < 4; ++c) out.emplace_back(1, c);
  return out;
}

std::uint64_t ipow(std::uint64_t q, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= q;
  return r;
}

}  // namespace

Elem dot(const GF& f, const Vec4& a, const Vec4& b) {
  Elem acc = f.zero();
  for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

Vec4 scale(const GF& f, Elem s, const Vec4& v) {
  return {f.mul(s, v[0]), f.mul(s, v[1]), f.mul(s, v[2]), f.mul(s, v[3])};
}

Vec4 combine(const GF& f, Elem s, const Vec4& u, Elem t, const Vec4& v) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) r[i] = f.add(f.mul(s, u[i]), f.mul(t, v[i]));
  return r;
}

bool is_zero_vec(const GF& f, const Vec4& v) {
  return f.is_zero(v[0]) && f.is_zero(v[1]) && f.is_zero(v[2]) && f.is_zero(v[3]);
}

ProjPoint normalize(const GF& f, const Vec4& v) {
  for (int i = 0; i < 4; ++i) {
    if (!f.is_zero(v[i])) return ProjPoint{scale(f, f.inv(v[i]), v)};
  }
  throw Error(ErrorKind::kInvalidArgument, "zero vector is not a projective point");
}

Plane3 normalize_plane(const GF& f, const Vec4& v) { return Plane3{normalize(f, v).x}; }

int rank(const GF& f, std::vector<Vec4> rows) {
  int r = 0;
  for (int col = 0; col < 4 && r < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (!f.is_zero(rows[i][col])) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    const Elem inv = f.inv(rows[r][col]);
    for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
      if (f.is_zero(rows[i][col])) continue;
      rows[i] = combine(f, f.one(), rows[i], f.neg(f.mul(rows[i][col], inv)), rows[r]);
    }
    ++r;
  }
  return r;
}

Line3 line_from_vectors(const GF& f, const Vec4& a_in, const Vec4& b_in) {
  Vec4 a = a_in;
  Vec4 b = b_in;
  int i = 0;
  while (i < 4 && f.is_zero(a[i]) && f.is_zero(b[i])) ++i;
  if (i == 4) throw Error(ErrorKind::kEqualPoints, "both vectors are zero");
  if (f.is_zero(a[i])) std::swap(a, b);
  a = scale(f, f.inv(a[i]), a);
  b = combine(f, f.one(), b, f.neg(b[i]), a);
  int j = i + 1;
  while (j < 4 && f.is_zero(b[j])) ++j;
  if (j == 4) throw Error(ErrorKind::kEqualPoints, "vectors span a single point");
  b = scale(f, f.inv(b[j]), b);
  a = combine(f, f.one(), a, f.neg(a[j]), b);
  return Line3{{a, b}};
}

Line3 line_through(const GF& f, const ProjPoint& p, const ProjPoint& q) {
  if (p == q) throw Error(ErrorKind::kEqualPoints, "a line needs two distinct points");
  return line_from_vectors(f, p.x, q.x);
}

LineShape shape(const GF& f, const Line3& l) {
  LineShape s{};
  int i = 0;
  while (f.is_zero(l.rows[0][i])) ++i;
  int j = 0;
  while (f.is_zero(l.rows[1][j])) ++j;
  s.pivot[0] = i;
  s.pivot[1] = j;
  int n = 0;
  for (int c = 0; c < 4; ++c) {
    if (c != i && c != j) s.free[n++] = c;
  }
  return s;
}

bool contains(const GF& f, const Line3& l, const ProjPoint& p) {
  const LineShape s = shape(f, l);
  const Vec4 r = combine(f, p.x[s.pivot[0]], l.rows[0], p.x[s.pivot[1]], l.rows[1]);
  return r == p.x;
}

bool contains(const GF& f, const Plane3& pl, const ProjPoint& p) { return f.is_zero(dot(f, pl.c, p.x)); }

bool contains(const GF& f, const Plane3& pl, const Line3& l) {
  return f.is_zero(dot(f, pl.c, l.rows[0])) && f.is_zero(dot(f, pl.c, l.rows[1]));
}

std::vector<ProjPoint> points_on_line(const GF& f, const Line3& l) {
  std::vector<ProjPoint> out;
  out.reserve(f.size() + 1);
  out.push_back(ProjPoint{l.rows[0]});
  out.push_back(ProjPoint{l.rows[1]});
  for (std::uint32_t a = 1; a < f.size(); ++a) {
    out.push_back(ProjPoint{combine(f, f.one(), l.rows[0], Elem{a}, l.rows[1])});
  }
  return out;
}

std::vector<Plane3> planes_through_line(const GF& f, const Line3& l) {
  const LineShape s = shape(f, l);
  Vec4 h[2];
  for (int n = 0; n < 2; ++n) {
    const int c = s.free[n];
    h[n] = Vec4{f.zero(), f.zero(), f.zero(), f.zero()};
    h[n][c] = f.one();
    h[n][s.pivot[0]] = f.neg(l.rows[0][c]);
    h[n][s.pivot[1]] = f.neg(l.rows[1][c]);
  }
  std::vector<Plane3> out;
  out.reserve(f.size() + 1);
  out.push_back(normalize_plane(f, h[0]));
  out.push_back(normalize_plane(f, h[1]));
  for (std::uint32_t a = 1; a < f.size(); ++a) {
    out.push_back(normalize_plane(f, combine(f, f.one(), h[0], Elem{a}, h[1])));
  }
  return out;
}

std::optional<ProjPoint> meet(const GF& f, const Line3& l, const Plane3& pl) {
  const Elem a = dot(f, pl.c, l.rows[0]);
  const Elem b = dot(f, pl.c, l.rows[1]);
  if (f.is_zero(a) && f.is_zero(b)) return std::nullopt;
  return normalize(f, combine(f, b, l.rows[0], f.neg(a), l.rows[1]));
}

bool skew(const GF& f, const Line3& a, const Line3& b) {
  return rank(f, {a.rows[0], a.rows[1], b.rows[0], b.rows[1]}) == 4;
}

std::optional<ProjPoint> intersection(const GF& f, const Line3& a, const Line3& b) {
  if (a == b || skew(f, a, b)) return std::nullopt;
  // Any plane through b not containing a meets a at the common point.
  for (const Plane3& pl : planes_through_line(f, b)) {
    if (auto p = meet(f, a, pl)) return p;
  }
  return std::nullopt;
}

std::array<Elem, 6> plucker(const GF& f, const Line3& l) {
  const Vec4& u = l.rows[0];
  const Vec4& v = l.rows[1];
  auto minor = [&](int i, int j) { return f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i])); };
  return {minor(0, 1), minor(0, 2), minor(0, 3), minor(1, 2), minor(1, 3), minor(2, 3)};
}

bool plucker_relation_holds(const GF& f, const std::array<Elem, 6>& p) {
  const Elem r = f.add(f.sub(f.mul(p[0], p[5]), f.mul(p[1], p[4])), f.mul(p[2], p[3]));
  return f.is_zero(r);
}

std::uint64_t line_count(std::uint64_t q) { return (q * q + 1) * (q * q + q + 1); }

LineEnumerator::LineEnumerator(GFPtr f, std::uint64_t budget) : f_(std::move(f)) {
  count_ = line_count(f_->size());
  if (count_ > budget) {
    throw Error(ErrorKind::kBudgetExceeded,
                std::to_string(count_) + " lines exceed the budget of " + std::to_string(budget));
  }
}

Line3 LineEnumerator::at(std::uint64_t index) const {
  const GF& f = *f_;
  const std::uint64_t q = f.size();
  for (const Block& b : kBlocks) {
    const auto entries = free_entries(b);
    const std::uint64_t n = ipow(q, entries.size());
    if (index >= n) {
      index -= n;
      continue;
    }
    Line3 l;
    for (auto& row : l.rows) row = Vec4{f.zero(), f.zero(), f.zero(), f.zero()};
    l.rows[0][b.i] = f.one();
    l.rows[1][b.j] = f.one();
    for (std::size_t k = entries.size(); k-- > 0;) {
      l.rows[entries[k].first][entries[k].second] = Elem{static_cast<std::uint32_t>(index % q)};
      index /= q;
    }
    return l;
  }
  throw Error(ErrorKind::kInvalidArgument, "line index out of range");
}

LineEnumerator enumerate_lines(GFPtr f, std::uint64_t budget) { return LineEnumerator(std::move(f), budget); }

std::vector<ProjPoint> all_points(const GF& f) {
  std::vector<ProjPoint> out;
  const std::uint32_t q = f.size();
  for (int lead = 0; lead < 4; ++lead) {
    const std::uint64_t n = ipow(q, 3 - lead);
    for (std::uint64_t idx = 0; idx < n; ++idx) {
      Vec4 x{f.zero(), f.zero(), f.zero(), f.zero()};
      x[lead] = f.one();
      std::uint64_t r = idx;
      for (int c = 3; c > lead; --c) {
        x[c] = Elem{static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
      out.push_back(ProjPoint{x});
    }
  }
  return out;
}

nlohmann::json to_json(const GF& f, const ProjPoint& p) {
  nlohmann::json j = nlohmann::json::array();
  for (Elem e : p.x) j.push_back(f.element_to_json(e));
  return j;
}

nlohmann::json to_json(const GF& f, const Line3& l) {
  return nlohmann::json::array({to_json(f, ProjPoint{l.rows[0]}), to_json(f, ProjPoint{l.rows[1]})});
}

nlohmann::json to_json(const GF& f, const Plane3& pl) { return to_json(f, ProjPoint{pl.c}); }

ProjPoint point_from_json(const GF& f, const nlohmann::json& j) {
  Vec4 x;
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::kInvalidArgument, "a point needs 4 coordinates");
  for (int i = 0; i < 4; ++i) x[i] = f.element_from_json(j[i]);
  return normalize(f, x);
}

}  // namespace cubsurf
