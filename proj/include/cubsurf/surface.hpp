#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubsurf/projgeo.hpp"
#include "json.hpp"

namespace cubsurf {

using Exponent = std::array<int, 4>;

/// The 20 cubic monomials in the fixed order 3000, 2100, 2010, ..., 0003.
const std::array<Exponent, 20>& cubic_monomials();
/// Key such as "2100" for a monomial.
std::string monomial_key(const Exponent& e);
/// Position of a cubic exponent in cubic_monomials().
int monomial_index(const Exponent& e);

/// A cubic form over a table field.
class CubicForm {
 public:
  CubicForm(GFPtr field, std::array<Elem, 20> coeffs);

  const GFPtr& field_ptr() const { return field_; }
  const GF& field() const { return *field_; }
  const std::array<Elem, 20>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Elem eval(const Vec4& x) const;
  Vec4 gradient(const Vec4& x) const;
  /// Coefficients (F(U), grad F(U).V, grad F(V).U, F(V)) of F(sU + tV) in
  /// s^3, s^2 t, s t^2, t^3.
  std::array<Elem, 4> restrict_to_line(const Vec4& u, const Vec4& v) const;

  bool operator==(const CubicForm& o) const { return coeffs_ == o.coeffs_; }

  nlohmann::json to_json() const;

 private:
  GFPtr field_;
  std::array<Elem, 20> coeffs_;
  // d/dx_i as quadratic forms over 2000, 1100, 1010, 1001, 0200, ..., 0002.
  std::array<std::array<Elem, 10>, 4> partials_;
};

/// A cubic form with integer coefficients (surfaces over Q).
struct IntegerCubic {
  std::array<mpz_class, 20> coeffs;

  mpz_class eval(const std::array<mpz_class, 4>& x) const;
  std::array<mpz_class, 4> gradient(const std::array<mpz_class, 4>& x) const;
  /// Coefficients of F(sU + tV) in s^3, s^2 t, s t^2, t^3.
  std::array<mpz_class, 4> restrict_to_line(const std::array<mpz_class, 4>& u,
                                            const std::array<mpz_class, 4>& v) const;
  CubicForm reduce(GFPtr f) const;
};

/// x^3 + y^3 + z(z^2 + M w^2)
IntegerCubic family_s(long m);
/// x^3 + y^3 + z^3 + M w^3
IntegerCubic family_s_prime(long m);
CubicForm fermat(GFPtr f);
/// The smooth char-2 surface with 13 Eckardt points:
/// x0^2 x2 + x0^2 x3 + x0 x1^2 + x0 x1 x2 + x0 x3^2 + x1^2 x2 + x1 x2^2.
CubicForm eckardt_example();

CubicForm cubic_from_json(const nlohmann::json& j, GFPtr field);

/// Image of S under the field embedding small -> big.
CubicForm base_change(const CubicForm& s, GFPtr big);

/// G(y) = F(A y) where the columns of A are the given vectors.
CubicForm transform_cubic(const CubicForm& s, const std::array<Vec4, 4>& columns);

/// Coefficients of F(y_0 c_0 + ... + y_{m-1} c_{m-1}) over the degree-3
/// monomials in m variables, descending lexicographic exponent order.
std::vector<Elem> substitute(const CubicForm& s, const std::vector<Vec4>& columns);

struct SmoothnessReport {
  bool smooth = false;
  /// Singular point over witness_field, when one was found by the bounded
  /// search over F_q and small extensions.
  std::optional<ProjPoint> witness;
  GFPtr witness_field;
};

/// Exact: F and its partials have no common zero over the algebraic closure,
/// decided by a Groebner basis of (F, dF/dx_0, ..., dF/dx_3).
/// Throws BudgetExceeded if the basis computation exceeds `max_pairs`.
SmoothnessReport check_smoothness(const CubicForm& s, std::size_t witness_budget = std::size_t{1} << 22,
                                  std::size_t max_pairs = 20000);
bool is_smooth(const CubicForm& s);

struct IntersectionDivisor {
  bool contained = false;
  /// Rational points with multiplicity; points defined over extensions are
  /// only counted.
  std::vector<std::pair<ProjPoint, int>> points;
  int extension_multiplicity = 0;

  /// True when every point is rational.
  bool fully_rational() const { return !contained && extension_multiplicity == 0; }
};

IntersectionDivisor intersect_line(const CubicForm& s, const Line3& l);
bool line_on_surface(const CubicForm& s, const Line3& l);

struct SurfaceLines {
  GFPtr field;        // F_{q^k}
  CubicForm surface;  // S over F_{q^k}
  std::vector<Line3> lines;
};

/// Every line of P^3(F_{q^k}) on S, by a scan that rejects a whole family of
/// candidates as soon as the first spanning vector is off the surface.
/// Throws BudgetExceeded if q^k > 2^22.
SurfaceLines lines_on_surface(const CubicForm& s, unsigned k = 1);

struct LineIncidence {
  int neighbours = 0;    // other lines meeting this one
  int coplanar_pairs = 0;
  bool pairs_partition = false;  // the neighbours split into 5 pairs, pairwise disjoint
};

/// Checks, for each line, the 10-neighbour / 5-pair structure.
std::vector<LineIncidence> line_incidence(const GF& f, const std::vector<Line3>& lines);

/// Throws PointNotOnSurface or SingularPoint.
Plane3 tangent_plane(const CubicForm& s, const ProjPoint& p);

enum class PointKind { kEckardt, kParabolicNonEckardt, kHyperbolic, kElliptic };
std::string_view to_string(PointKind k);

/// Binary quadratic form A a^2 + B ab + C b^2 of asymptotic directions
/// a V1 + b V2 on the tangent plane, together with the basis used.
struct TangentCone {
  Vec4 v1, v2;
  Elem a, b, c;
};

/// Basis P, V1, V2 of the tangent plane: V_i = e_i - (n_i / n_j) e_j where
/// n = grad F(P) and j is its first nonzero index; the first pair that is
/// independent together with P.
TangentCone tangent_cone(const CubicForm& s, const ProjPoint& p);

struct PointClass {
  PointKind kind = PointKind::kElliptic;
  bool ternary = false;
  int on_line_count = 0;  // lines of S through P over the algebraic closure
};

PointClass classify_point(const CubicForm& s, const ProjPoint& p);

struct AsymptoticLines {
  std::vector<Line3> lines;  // rational asymptotic lines at P
  int count_closure = 0;     // 1, 2, or -1 for infinitely many
};

AsymptoticLines asymptotic_lines(const CubicForm& s, const ProjPoint& p);

enum class GammaType { kIrreducibleNodal, kIrreducibleCuspidal, kConicPlusLine, kThreeLines };
enum class SingularityType { kNode, kCusp, kTriplePoint };
std::string_view to_string(GammaType t);
std::string_view to_string(SingularityType t);

struct GammaCurve {
  std::array<Vec4, 3> basis;  // P, V1, V2
  /// Ternary cubic in coordinates (u0, u1, u2) on the basis, monomials
  /// 300, 210, 201, 120, 111, 102, 030, 021, 012, 003.
  std::vector<Elem> coeffs;
  GammaType type = GammaType::kIrreducibleNodal;
  SingularityType singularity = SingularityType::kNode;
};

GammaCurve gamma_curve(const CubicForm& s, const ProjPoint& p);

struct GaussOnLine {
  int degree = 2;
  bool separable = true;
  /// Ramification points over the algebraic closure: 2, 1, or -1 for all.
  int parabolic_count_closure = 0;
  std::vector<ProjPoint> parabolic_points;  // rational ones
  std::vector<ProjPoint> eckardt_points;    // rational ones
};

/// Throws LineNotOnSurface.
GaussOnLine gauss_on_line(const CubicForm& s, const Line3& l);

/// All F_q-points of S in the order of all_points().
std::vector<ProjPoint> surface_points(const CubicForm& s);
/// The same set by a different route: fibres over (x0:x1:x2) solved for x3.
std::vector<ProjPoint> surface_points_by_fibres(const CubicForm& s);

}  // namespace cubsurf
