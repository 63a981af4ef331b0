#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <vector>

#include "cubsurf/intmat.hpp"
#include "cubsurf/span.hpp"
#include "json.hpp"

namespace cubsurf {

/// A collinear triple P + Q + R as point indices, sorted (repeats allowed).
using Triple = std::array<std::uint32_t, 3>;

struct RelationSet {
  /// Cycles l.S of rational lines not on S with every point rational.
  std::vector<Triple> secant_cycles;
  /// Rational lines on S with their rational points.
  std::vector<std::vector<std::uint32_t>> contained_lines;
  /// Degree-zero rows g - g0 spanning the relation lattice. For a line on S
  /// the rows P - P_l and 3 P_l - g0 stand for all triples on that line.
  std::vector<SparseRow> rows;
};

/// Throws NoRationalPoints.
RelationSet relation_rows(const PointTable& t);

struct GroupStructure {
  std::size_t points = 0;
  std::size_t relations = 0;
  std::size_t free_rank = 0;                  // of H_S
  std::vector<mpz_class> invariant_factors;   // torsion of H_S, each dividing the next
  std::size_t h0_rank = 0;
  int h0_dim_mod2 = 0;
  int h0_dim_mod3 = 0;
  int h0_two_torsion_dim = 0;

  bool h0_trivial() const { return h0_rank == 0 && invariant_factors.empty(); }
  /// Every element of H^0 has order dividing n.
  bool h0_exponent_divides(long n) const;
  nlohmann::json to_json() const;
};

/// Canonical representative of a class of the free group on S(F_q) modulo
/// the relations; equal representatives mean equal classes.
struct HsClass {
  std::vector<std::pair<std::uint32_t, mpz_class>> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  friend bool operator==(const HsClass&, const HsClass&) = default;
};

/// H_S(F_q) = Z^{S(F_q)} / (degree-zero collinear relations).
class HsPresentation {
 public:
  explicit HsPresentation(const PointTable& t);

  const PointTable& table() const { return *table_; }
  const RelationSet& relations() const { return relations_; }
  const HermiteLattice& lattice() const { return lattice_; }

  GroupStructure structure() const;

  HsClass class_of(std::size_t i) const;
  HsClass class_of(const ProjPoint& p) const;
  HsClass class_diff(const ProjPoint& p, const ProjPoint& q) const;
  /// Class of an arbitrary integer combination of points.
  HsClass class_of(const SparseRow& divisor) const;
  /// Degree-zero class sum_i a_i P_i, each P_i with coefficient; order
  /// divides n iff n times it is zero.
  bool order_divides(const SparseRow& divisor, long n) const;

  /// The classes [P - p0] for P in b generate H^0.
  bool differences_generate_h0(const std::vector<std::size_t>& b, std::size_t p0) const;

 private:
  const PointTable* table_;
  RelationSet relations_;
  HermiteLattice lattice_;
};

struct TernaryBoundReport {
  ProjPoint p0;
  int dim_mod2 = 0;
  int dim_mod3 = 0;
  std::optional<int> r;  // minimal generator count when the search finished
  bool consistent = true;
  int generation_checks = 0;
  int generation_failures = 0;
  nlohmann::json to_json(const GF& f) const;
};

/// Lower bound r >= dim H^0 / p H^0 for p = 2, 3 against the exact minimal
/// generator count, and the generation of H^0 by [P - P0] over generating
/// sets. Throws NoTernaryPoint.
TernaryBoundReport ternary_bound_check(const HsPresentation& h, int r_max = 3, std::uint64_t budget = 200000,
                                       int singleton_samples = 8);

}  // namespace cubsurf
