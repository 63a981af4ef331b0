#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace cubsurf {

using IntMatrix = std::vector<std::vector<mpz_class>>;
/// Sparse integer vector: (column, value) pairs with distinct columns.
using SparseRow = std::vector<std::pair<std::uint32_t, std::int64_t>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
/// Bareiss fraction-free elimination.
mpz_class determinant(const IntMatrix& m);
/// Inverse of a matrix with determinant +-1; throws InvalidArgument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

struct SmithForm {
  IntMatrix u, d, v;  // u * m * v = d

  /// Diagonal of d, nonnegative, each dividing the next; zeros last.
  std::vector<mpz_class> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Row lattice in Z^n kept in reduced Hermite form: echelon rows with
/// positive pivots, entries above each pivot in [0, pivot). Arithmetic is
/// int64 with overflow checks; on overflow the lattice is rebuilt with
/// arbitrary precision from the rows that changed it.
class HermiteLattice {
 public:
  explicit HermiteLattice(std::size_t columns);
  HermiteLattice(const HermiteLattice& o);
  HermiteLattice& operator=(const HermiteLattice& o);
  HermiteLattice(HermiteLattice&&) noexcept;
  HermiteLattice& operator=(HermiteLattice&&) noexcept;
  ~HermiteLattice();

  std::size_t columns() const;
  std::size_t rank() const;
  bool uses_big_integers() const;

  /// Adds a generator; returns true when the lattice grew.
  bool insert(const SparseRow& row);
  bool insert(const std::vector<mpz_class>& row);
  bool contains(const std::vector<mpz_class>& v) const;

  /// Canonical representative of v modulo the lattice.
  std::vector<mpz_class> reduce(std::vector<mpz_class> v) const;

  /// Basis rows in echelon order.
  IntMatrix basis() const;

  /// Z^n / L as (free rank, invariant factors > 1 in divisibility order).
  std::pair<std::size_t, std::vector<mpz_class>> quotient() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reduced row Hermite form, zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

}  // namespace cubsurf
