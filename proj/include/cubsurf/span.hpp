#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubsurf/surface.hpp"
#include "json.hpp"

namespace cubsurf {

/// The F_q-points of a surface with indices, gradients, and the residual
/// point of every secant and tangent line.
class PointTable {
 public:
  static constexpr std::uint32_t kNone = 0xffffffffU;

  explicit PointTable(CubicForm s);

  const CubicForm& surface() const { return surface_; }
  const GF& field() const { return surface_.field(); }
  std::size_t size() const { return points_.size(); }
  const ProjPoint& point(std::size_t i) const { return points_[i]; }
  const std::vector<ProjPoint>& points() const { return points_; }
  const Vec4& gradient(std::size_t i) const { return gradients_[i]; }

  /// Throws PointNotOnSurface.
  std::size_t index_of(const ProjPoint& p) const;
  std::optional<std::size_t> find(const ProjPoint& p) const;

  /// Third point R of l.S = P_i + P_j + R for the line through two distinct
  /// points, or kNone when the line lies on S. R may equal P_i or P_j.
  std::uint32_t third(std::size_t i, std::size_t j) const;

  /// Residual points R of the tangent lines at P_i with l.S = 2 P_i + R,
  /// R != P_i, one entry per such line.
  const std::vector<std::uint32_t>& tangent_residuals(std::size_t i) const;
  /// Lines through P_i not on S meeting it only at P_i (l.S = 3 P_i).
  int flex_line_count(std::size_t i) const;

 private:
  std::uint32_t compute_third(std::size_t i, std::size_t j) const;

  CubicForm surface_;
  std::vector<ProjPoint> points_;
  std::vector<Vec4> gradients_;
  std::unordered_map<ProjPoint, std::uint32_t, ProjPointHash> index_;
  std::vector<std::uint32_t> third_;  // dense N x N when N is small
  mutable std::vector<std::optional<std::vector<std::uint32_t>>> tangents_;
  mutable std::vector<int> flex_lines_;
};

struct SpanState {
  int generations = 0;  // n with B_n = B_{n+1}
  std::vector<bool> member;
  std::size_t count = 0;
  std::vector<std::size_t> sizes;  // |B_0|, |B_1|, ...
  std::uint64_t lines_examined = 0;

  bool is_everything() const { return count == member.size(); }
  std::vector<std::size_t> indices() const;
};

/// Least set containing B that is closed under secants and tangents.
SpanState span_closure(const PointTable& t, const std::vector<std::size_t>& generators);
/// Throws PointNotOnSurface.
SpanState span_closure(const PointTable& t, const std::vector<ProjPoint>& generators);

/// Exhaustive check of the generating rule over every pair and tangent line.
bool is_span_closed(const PointTable& t, const std::vector<bool>& member);

nlohmann::json to_json(const PointTable& t, const SpanState& s);

struct LemmaCheck {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::optional<nlohmann::json> counterexample;
};

struct SpanLemmaReport {
  std::vector<LemmaCheck> checks;
  bool passed() const;
};

/// Exhaustive checks over S(F_q) with rational lines:
///  line:      l(K) in Gamma_P(K) in spn(P) for non-Eckardt P on a line l,
///  skew-line: l'(K) in spn(l(K)) for skew rational lines,
///  two-lines: spn(l1(K) u l2(K)) = S(K) for skew rational lines,
///  single:    spn(P) = S(K) for non-Eckardt P on a line of a skew pair.
/// Throws HypothesisFailed when q < 13 and ConfigurationAbsent without a
/// rational line.
SpanLemmaReport verify_span_lemmas(const PointTable& t, const std::vector<Line3>& rational_lines);
SpanLemmaReport verify_span_lemmas(const PointTable& t);

/// spn(P) = S(K) for every non-Eckardt P on either line of every skew pair.
/// Returns the number of points tested and the failures.
LemmaCheck check_single_point_generation(const PointTable& t, const std::vector<Line3>& rational_lines);

struct MinimalGenerators {
  bool found = false;  // false: r exceeds r_max
  int r = 0;
  std::vector<ProjPoint> witness;
};

/// Exact r(S, F_q) by increasing-size search. Subsets containing a point
/// already in the span of the others are skipped.
/// Throws BudgetExceeded after `budget` closure computations.
MinimalGenerators minimal_generators(const PointTable& t, int r_max = 3, std::uint64_t budget = 2000000);

}  // namespace cubsurf
