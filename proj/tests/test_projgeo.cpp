#include <random>
#include <set>

#include "cubsurf/error.hpp"
#include "cubsurf/projgeo.hpp"
#include "doctest.h"

using namespace cubsurf;

namespace {

Vec4 v4(const GF& f, int a, int b, int c, int d) { return {f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)}; }

ProjPoint random_point(const GF& f, std::mt19937_64& rng) {
  for (;;) {
    Vec4 x;
    for (auto& e : x) e = f.from_index(rng() % f.size());
    if (!is_zero_vec(f, x)) return normalize(f, x);
  }
}

}  // namespace

TEST_CASE("line_through basics") {
  const GFPtr f = GF::make(2, 1);
  const ProjPoint e0{v4(*f, 1, 0, 0, 0)};
  const ProjPoint e1{v4(*f, 0, 1, 0, 0)};
  const Line3 l = line_through(*f, e0, e1);
  CHECK(l.rows[0] == v4(*f, 1, 0, 0, 0));
  CHECK(l.rows[1] == v4(*f, 0, 1, 0, 0));
  CHECK_THROWS_AS(line_through(*f, e0, e0), Error);

  const auto pts = points_on_line(*f, l);
  CHECK(pts == std::vector<ProjPoint>{e0, e1, ProjPoint{v4(*f, 1, 1, 0, 0)}});

  const auto planes = planes_through_line(*f, l);
  CHECK(planes == std::vector<Plane3>{Plane3{v4(*f, 0, 0, 1, 0)}, Plane3{v4(*f, 0, 0, 0, 1)},
                                      Plane3{v4(*f, 0, 0, 1, 1)}});

  CHECK(meet(*f, l, Plane3{v4(*f, 1, 0, 0, 0)}) == e1);
  CHECK(!meet(*f, l, Plane3{v4(*f, 0, 0, 0, 1)}).has_value());
}

TEST_CASE("line_through over F_13: incidence, symmetry, canonical forms") {
  const GFPtr gf = GF::make(13, 1);
  const GF& f = *gf;
  std::mt19937_64 rng(5);
  for (int it = 0; it < 1000; ++it) {
    const ProjPoint p = random_point(f, rng);
    const ProjPoint q = random_point(f, rng);
    if (p == q) continue;
    const Line3 l = line_through(f, p, q);
    CHECK(contains(f, l, p));
    CHECK(contains(f, l, q));
    CHECK(l == line_through(f, q, p));
    // Another spanning pair of the same line.
    const auto pts = points_on_line(f, l);
    CHECK(pts.size() == 14);
    CHECK(std::set<ProjPoint>(pts.begin(), pts.end()).size() == 14);
    const ProjPoint a = pts[rng() % pts.size()];
    ProjPoint b = pts[rng() % pts.size()];
    while (b == a) b = pts[rng() % pts.size()];
    CHECK(line_through(f, a, b) == l);
    const auto planes = planes_through_line(f, l);
    CHECK(planes.size() == 14);
    CHECK(std::set<Plane3>(planes.begin(), planes.end()).size() == 14);
    for (const Plane3& pl : planes) CHECK(contains(f, pl, l));
  }
}

TEST_CASE("enumerate_lines counts and incidence") {
  for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const GFPtr gf = GF::make(p, k);
    const GF& f = *gf;
    const auto lines = enumerate_lines(gf);
    const std::uint64_t q = f.size();
    CHECK(lines.size() == (q * q + 1) * (q * q + q + 1));
    std::set<Line3> seen;
    for (const Line3& l : lines) {
      seen.insert(l);
      CHECK(line_from_vectors(f, l.rows[0], l.rows[1]) == l);  // already canonical
      CHECK(plucker_relation_holds(f, plucker(f, l)));
      CHECK(points_on_line(f, l).size() == q + 1);
    }
    CHECK(seen.size() == lines.size());
  }
  CHECK(enumerate_lines(GF::make(2, 1)).size() == 35);
  CHECK(enumerate_lines(GF::make(3, 1)).size() == 130);
}

TEST_CASE("brute-force 2-dimensional subspaces of F_2^4") {
  const GFPtr gf = GF::make(2, 1);
  const auto pts = all_points(*gf);
  CHECK(pts.size() == 15);
  std::set<Line3> subspaces;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) subspaces.insert(line_through(*gf, pts[i], pts[j]));
  }
  CHECK(subspaces.size() == 35);
}

TEST_CASE("skewness agrees with point-set disjointness over F_3") {
  const GFPtr gf = GF::make(3, 1);
  const GF& f = *gf;
  const LineEnumerator en = enumerate_lines(gf);
  std::vector<Line3> lines(en.begin(), en.end());
  std::vector<std::set<ProjPoint>> point_sets;
  for (const Line3& l : lines) {
    auto pts = points_on_line(f, l);
    point_sets.emplace_back(pts.begin(), pts.end());
  }
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      int common = 0;
      for (const ProjPoint& p : point_sets[a]) common += point_sets[b].count(p) != 0U ? 1 : 0;
      CHECK(skew(f, lines[a], lines[b]) == (common == 0));
      const auto x = intersection(f, lines[a], lines[b]);
      CHECK(x.has_value() == (common == 1));
      if (x) CHECK(point_sets[a].count(*x) == 1U);
    }
  }
}

TEST_CASE("enumeration budget") {
  try {
    enumerate_lines(GF::make(2, 6), 1000);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudgetExceeded);
  }
}
