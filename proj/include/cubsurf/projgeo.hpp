#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <vector>

#include "cubsurf/field/gf.hpp"
#include "json.hpp"

namespace cubsurf {

using field::Elem;
using field::GF;
using field::GFPtr;

using Vec4 = std::array<Elem, 4>;

/// A point of P^3, first nonzero coordinate equal to 1.
struct ProjPoint {
  Vec4 x{};

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// A line of P^3 as the row space of a 2x4 matrix in reduced row-echelon form.
struct Line3 {
  std::array<Vec4, 2> rows{};

  friend bool operator==(const Line3&, const Line3&) = default;
  friend auto operator<=>(const Line3&, const Line3&) = default;
};

/// A plane of P^3 given by a covector, normalized like a point.
struct Plane3 {
  Vec4 c{};

  friend bool operator==(const Plane3&, const Plane3&) = default;
  friend auto operator<=>(const Plane3&, const Plane3&) = default;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& p) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Elem e : p.x) h = (h ^ e.v) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

struct Line3Hash {
  std::size_t operator()(const Line3& l) const noexcept {
    return ProjPointHash{}(ProjPoint{l.rows[0]}) * 31 + ProjPointHash{}(ProjPoint{l.rows[1]});
  }
};

Elem dot(const GF& f, const Vec4& a, const Vec4& b);
Vec4 scale(const GF& f, Elem s, const Vec4& v);
/// s*u + t*v
Vec4 combine(const GF& f, Elem s, const Vec4& u, Elem t, const Vec4& v);
bool is_zero_vec(const GF& f, const Vec4& v);

/// Throws InvalidArgument for the zero vector.
ProjPoint normalize(const GF& f, const Vec4& v);
Plane3 normalize_plane(const GF& f, const Vec4& v);

/// Rank of a list of vectors in F^4.
int rank(const GF& f, std::vector<Vec4> rows);

/// Line spanned by two independent vectors; throws EqualPoints otherwise.
Line3 line_from_vectors(const GF& f, const Vec4& a, const Vec4& b);
Line3 line_through(const GF& f, const ProjPoint& p, const ProjPoint& q);

/// Pivot columns (i, j) and free columns (f1, f2) of a canonical line.
struct LineShape {
  int pivot[2];
  int free[2];
};
LineShape shape(const GF& f, const Line3& l);

bool contains(const GF& f, const Line3& l, const ProjPoint& p);
bool contains(const GF& f, const Plane3& pl, const ProjPoint& p);
bool contains(const GF& f, const Plane3& pl, const Line3& l);

/// U, V, then U + aV for nonzero a in code order.
std::vector<ProjPoint> points_on_line(const GF& f, const Line3& l);

/// H1, H2, then H1 + aH2 for nonzero a in code order, where H1, H2 are the
/// null-space covectors with a 1 in the first/second free column.
std::vector<Plane3> planes_through_line(const GF& f, const Line3& l);

/// The intersection point, or nullopt when l lies in the plane.
std::optional<ProjPoint> meet(const GF& f, const Line3& l, const Plane3& pl);

bool skew(const GF& f, const Line3& a, const Line3& b);
/// Intersection of coplanar distinct lines, nullopt when skew.
std::optional<ProjPoint> intersection(const GF& f, const Line3& a, const Line3& b);

/// p01, p02, p03, p12, p13, p23.
std::array<Elem, 6> plucker(const GF& f, const Line3& l);
bool plucker_relation_holds(const GF& f, const std::array<Elem, 6>& p);

/// (q^2+1)(q^2+q+1).
std::uint64_t line_count(std::uint64_t q);

/// Every line of P^3(F_q) exactly once, grouped by pivot columns
/// (0,1), (0,2), (0,3), (1,2), (1,3), (2,3); within a group the free entries
/// of row 0 then row 1 are read as base-q digits, most significant first.
class LineEnumerator {
 public:
  static constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

  /// Throws BudgetExceeded when the line count exceeds `budget`.
  LineEnumerator(GFPtr f, std::uint64_t budget = kDefaultBudget);

  std::uint64_t size() const { return count_; }
  Line3 at(std::uint64_t index) const;

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Line3;
    using difference_type = std::ptrdiff_t;
    using pointer = const Line3*;
    using reference = Line3;
    iterator(const LineEnumerator* e, std::uint64_t i) : e_(e), i_(i) {}
    Line3 operator*() const { return e_->at(i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const LineEnumerator* e_;
    std::uint64_t i_;
  };
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, count_}; }

 private:
  GFPtr f_;
  std::uint64_t count_;
};

LineEnumerator enumerate_lines(GFPtr f, std::uint64_t budget = LineEnumerator::kDefaultBudget);

/// All points of P^3(F_q) in the same RREF-style order (q^3+q^2+q+1).
std::vector<ProjPoint> all_points(const GF& f);

nlohmann::json to_json(const GF& f, const ProjPoint& p);
nlohmann::json to_json(const GF& f, const Line3& l);
nlohmann::json to_json(const GF& f, const Plane3& pl);
ProjPoint point_from_json(const GF& f, const nlohmann::json& j);

}  // namespace cubsurf
