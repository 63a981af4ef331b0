#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubsurf/planecubic.hpp"
#include "cubsurf/surface.hpp"
#include "json.hpp"

namespace cubsurf {

enum class Family {
  kS,       // x^3 + y^3 + z(z^2 + M w^2)
  kSPrime,  // x^3 + y^3 + z^3 + M w^3
};

std::string family_name(Family f);
/// Accepts "S_M" / "S" and "S'_M" / "S_prime" / "Sp". Throws InvalidArgument.
Family parse_family(const std::string& s);
IntegerCubic family_form(Family f, long m);

using IntPoint = std::array<mpz_class, 4>;

/// Divides out the content and makes the first nonzero coordinate positive.
/// Throws InvalidArgument for the zero vector.
IntPoint primitive(const IntPoint& v);
bool same_projective_point(const IntPoint& a, const IntPoint& b);
nlohmann::json to_json(const IntPoint& v);

struct RationalSurfacePoint {
  IntPoint x;
  Family family = Family::kS;
  long m = 0;

  friend bool operator==(const RationalSurfacePoint&, const RationalSurfacePoint&) = default;
};

/// Primitive representative of a rational point; throws PointNotOnSurface.
RationalSurfacePoint make_point(Family f, long m, const IntPoint& v);

struct SearchOptions {
  /// Keep the points (t : -t : 0 : w) of the line x + y = z = 0 on S_M.
  bool include_line_points = true;
  std::uint64_t budget = 4'000'000'000ULL;
};

/// All primitive solutions with max |coordinate| <= h, one per projective
/// point, ordered by height and then lexicographically.
/// Throws BudgetExceeded, InvalidArgument (h < 0, h > 100000 or m < 1).
std::vector<RationalSurfacePoint> point_search(Family f, long m, long h, const SearchOptions& opt = {});

/// Integer basis of the saturated lattice (Q P + Q Q) cap Z^4, in Hermite
/// form. Throws EqualPoints when P and Q are proportional.
struct GoodLineParam {
  IntPoint u, v;
  nlohmann::json to_json() const;
};

GoodLineParam good_parametrization(const IntPoint& p, const IntPoint& q);

/// Coprime (lambda, mu) with P = lambda u + mu v up to sign, or nullopt when
/// P is not on the line.
std::optional<std::pair<mpz_class, mpz_class>> line_coordinates(const GoodLineParam& g, const IntPoint& p);

/// u, v stay independent mod p. True for every saturated basis.
bool independent_mod(const GoodLineParam& g, long p);

long ord_p(const mpz_class& a, long p);
long ord_p(const mpq_class& a, long p);

struct NewtonSegment {
  long x0 = 0, x1 = 0;
  long y0 = 0, y1 = 0;
  mpq_class slope;
  long length() const { return x1 - x0; }
};

/// Lower convex hull of (i, ord_p a_i). Roots of sum a_i t^i have valuation
/// -slope, one per unit of horizontal length.
struct NewtonPolygon {
  long p = 0;
  std::vector<std::pair<long, long>> points;
  std::vector<NewtonSegment> segments;
  std::vector<mpq_class> root_valuations;  // ascending

  int positive_slope_segments() const;
  nlohmann::json to_json() const;
};

/// Throws AllZero.
NewtonPolygon newton_polygon(const std::vector<mpq_class>& coeffs, long p);

struct ReductionClass {
  bool bad = false;  // reduces to the cone vertex (0:0:0:1)
  CurvePoint point;  // phi(P); O for bad points

  nlohmann::json to_json(const PlaneCubic& c) const;
};

enum class LineCase {
  kContained,         // the line lies on S
  kAllBad,            // every point reduces to the vertex
  kGoodReduction,     // reduced line not on the reduced surface
  kBadNewton,         // reduced line on the cone, p does not divide u_3
  kBadPlaneZ0,        // reduced line on the cone inside z = 0
  kBadCone,           // reduced line on the cone of S'_M
};

std::string line_case_name(LineCase c);

struct LineRelationReport {
  std::array<IntPoint, 3> cycle;  // l.S = P1 + P2 + P3, repeated for multiplicity
  LineCase kind = LineCase::kGoodReduction;
  GoodLineParam param;
  std::array<ReductionClass, 3> phi;
  std::array<int, 3> psi{};
  std::optional<NewtonPolygon> newton;
  std::array<mpz_class, 4> normalized_coeffs;  // F(u + t v) after normalizing u, v
  bool relation_holds = false;   // sum of psi is zero mod n
  bool lemma_consistent = false; // the case-specific structure was observed

  nlohmann::json to_json(const PlaneCubic& c) const;
};

/// phi and psi at a prime p | M, p != 3, with n = 2 on S_M and n = 3 on
/// S'_M. Throws BadPrime, FamilyMismatch and HypothesisFailed from pic_mod.
class Reducer {
 public:
  Reducer(Family f, long m, long p);
  Reducer(Family f, long m, long p, int n);

  Family family() const { return family_; }
  long m() const { return m_; }
  long p() const { return p_; }
  int n() const { return pic_.n(); }
  const IntegerCubic& form() const { return form_; }
  const PlaneCubic& curve() const { return pic_.curve(); }
  const PicQuotient& pic() const { return pic_; }

  /// Throws PointNotOnSurface.
  ReductionClass phi(const IntPoint& x) const;
  /// Class index of phi(P) - O in Pic^0(C_p)/n.
  int psi(const IntPoint& x) const;
  std::vector<int> psi_coords(const IntPoint& x) const;

  /// The line through P (on S) and any other integer point D.
  /// Throws NotFullyRational when l.S has irrational points, EqualPoints.
  LineRelationReport verify_line_relation(const IntPoint& p, const IntPoint& d) const;

 private:
  int class_of(const ReductionClass& r) const;

  Family family_;
  long m_;
  long p_;
  IntegerCubic form_;
  PicQuotient pic_;
};

/// Convenience wrappers.
ReductionClass phi(const RationalSurfacePoint& pt, long p);
int psi(const RationalSurfacePoint& pt, long p, int n);

struct SweepReport {
  std::uint64_t cycles = 0;
  std::uint64_t failures = 0;
  std::uint64_t inconsistent = 0;
  std::map<std::string, std::uint64_t> by_case;
  std::optional<nlohmann::json> counterexample;

  nlohmann::json to_json() const;
};

/// Line relations for unordered pairs of the given points, in order, at most
/// max_pairs of them.
SweepReport line_relation_sweep(const Reducer& r, const std::vector<RationalSurfacePoint>& pts,
                                std::uint64_t max_pairs);

struct CoverageReport {
  std::uint64_t curve_points = 0;
  std::uint64_t curve_points_hit = 0;
  int classes = 0;
  int classes_hit_by_curve = 0;
  int classes_hit_by_psi = 0;
  bool psi_nonconstant = false;
  std::uint64_t bad_points = 0;

  double coverage_percent() const;
  nlohmann::json to_json() const;
};

CoverageReport reduction_coverage(const Reducer& r, const std::vector<RationalSurfacePoint>& pts);

struct RankBound {
  int achieved_dim = 0;
  int target_dim = 0;
  int n = 0;
  std::vector<long> primes;
  std::uint64_t points_used = 0;

  nlohmann::json to_json() const;
};

/// F_n-dimension spanned by (psi_{p_1}(P), ..., psi_{p_s}(P)) - psi(P_0) with
/// P_0 = (1:-1:0:0). Throws PrimeConditionFailed when the primes do not fit
/// the family or M.
RankBound rank_lower_bound(Family f, long m, const std::vector<long>& primes,
                           const std::vector<RationalSurfacePoint>& pts);

/// Lines L1 and L2 on x^2 - xy + y^2 + zt = 0, z^2 + M w^2 - xt - yt = 0
/// over F_p, for every choice of zeta, sqrt(-M) and cube root of 2.
struct DelPezzoReport {
  long m = 0;
  long p = 0;
  int l1_choices = 0;
  int l1_on_surface = 0;
  int l2_choices = 0;
  int l2_on_surface = 0;
  int distinct_lines = 0;  // among all instantiated L1 and L2
  bool perturbed_l1_on_surface = false;

  bool passed() const {
    return l1_on_surface == l1_choices && l2_on_surface == l2_choices && l1_choices == 4 && l2_choices == 12 &&
           distinct_lines == 16 && !perturbed_l1_on_surface;
  }
  nlohmann::json to_json() const;
};

/// Throws ConstantsUnavailable naming the missing constants.
DelPezzoReport del_pezzo_line_check(long m, long p);
/// Smallest prime at which del_pezzo_line_check has all its constants.
long smallest_del_pezzo_prime(long m);

}  // namespace cubsurf
