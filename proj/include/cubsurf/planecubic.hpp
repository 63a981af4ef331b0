#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "cubsurf/field/gf.hpp"
#include "json.hpp"

namespace cubsurf {

using field::Elem;
using field::GF;
using field::GFPtr;

/// A point of P^2, first nonzero coordinate equal to 1.
struct CurvePoint {
  std::array<Elem, 3> x{};

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
  friend auto operator<=>(const CurvePoint&, const CurvePoint&) = default;
};

/// The curve x^3 + y^3 + z^3 = 0 over F_p with the chord-tangent group law
/// based at the flex O = (1 : -1 : 0).
class PlaneCubic {
 public:
  /// Throws CharacteristicThree or NotPrime.
  explicit PlaneCubic(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  const GF& field() const { return *field_; }
  const GFPtr& field_ptr() const { return field_; }

  CurvePoint origin() const { return origin_; }
  bool on_curve(const std::array<Elem, 3>& v) const;
  /// Throws InvalidArgument for the zero vector.
  CurvePoint normalize(const std::array<Elem, 3>& v) const;
  /// Reduction of an integer triple; throws InvalidArgument when all three
  /// coordinates vanish mod p.
  CurvePoint reduce(const mpz_class& x, const mpz_class& y, const mpz_class& z) const;

  /// All F_p-points, sorted.
  const std::vector<CurvePoint>& points() const { return points_; }

  /// R with l.C = P + Q + R; the tangent line when P = Q.
  CurvePoint third_point(const CurvePoint& p, const CurvePoint& q) const;
  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
  CurvePoint neg(const CurvePoint& p) const;
  CurvePoint mul(const CurvePoint& p, long n) const;
  std::uint64_t order(const CurvePoint& p) const;
  bool is_flex(const CurvePoint& p) const { return third_point(p, p) == p; }

  /// Invariant factors of C(F_p), each dividing the next, ones dropped.
  std::vector<std::uint64_t> group_structure() const;

  nlohmann::json to_json(const CurvePoint& p) const;

 private:
  std::array<Elem, 3> gradient(const std::array<Elem, 3>& v) const;

  std::uint64_t p_;
  GFPtr field_;
  CurvePoint origin_;
  std::vector<CurvePoint> points_;
};

/// Pic^0(C_p) / n Pic^0(C_p) for n in {2, 3}, realized as C(F_p) / n C(F_p)
/// through P -> [P - O], with coordinates in (Z/n)^dim.
class PicQuotient {
 public:
  PicQuotient(PlaneCubic curve, int n);

  const PlaneCubic& curve() const { return curve_; }
  int n() const { return n_; }
  int dim() const { return dim_; }
  /// dim computed from the invariant factors instead of the basis search.
  int dim_from_structure() const;
  /// Coordinates of [P - O] on the chosen basis.
  std::vector<int> coords(const CurvePoint& p) const;
  /// Index a_0 + n a_1 + ... of the coordinates.
  int class_index(const CurvePoint& p) const;
  int class_count() const;
  /// One point per class, by class index.
  const std::vector<CurvePoint>& representatives() const { return reps_; }
  bool every_class_represented() const;
  const std::vector<CurvePoint>& basis() const { return basis_; }

  nlohmann::json to_json() const;

 private:
  PlaneCubic curve_;
  int n_;
  int dim_ = 0;
  std::vector<CurvePoint> basis_;
  std::map<CurvePoint, int> index_;
  std::vector<CurvePoint> reps_;
};

/// Throws HypothesisFailed unless p = 1 mod 3 (and, for n = 2, 2 is a cube
/// mod p), or n is not 2 or 3.
PicQuotient pic_mod(std::uint64_t p, int n);

struct PrimeCondition {
  bool cond_a = false;  // p = 1 mod 3
  bool cond_b = false;  // 2 is a cube mod p
  bool t3_minus_2_splits = false;
};

/// Throws InvalidArgument for p = 2, 3.
PrimeCondition prime_condition(std::uint64_t p);

struct TwoDivision {
  bool splits = false;      // 4x^3 - 27 has three roots in F_p
  bool conditions = false;  // p = 1 mod 3 and 2 a cube mod p
  bool agree() const { return splits == conditions; }
};

/// Throws HypothesisFailed when p divides 6.
TwoDivision two_division_check(std::uint64_t p);

/// All F_p-points of C, sorted. Throws CharacteristicThree.
std::vector<CurvePoint> curve_points(std::uint64_t p);

/// Projective points of y^2 + y = x^3 - 7 over F_p.
std::uint64_t weierstrass_point_count(std::uint64_t p);

/// Invariant factors of y^2 + y = x^3 - 7 over F_p from its own group law.
std::vector<std::uint64_t> weierstrass_group_structure(std::uint64_t p);

struct WeierstrassCheck {
  std::uint64_t curve_points = 0;
  std::uint64_t model_points = 0;
  std::vector<std::uint64_t> curve_structure;
  std::vector<std::uint64_t> model_structure;
  bool agree() const { return curve_points == model_points && curve_structure == model_structure; }
};

/// Compares C with the model y^2 + y = x^3 - 7. Throws CharacteristicThree.
WeierstrassCheck weierstrass_check(std::uint64_t p);

}  // namespace cubsurf
