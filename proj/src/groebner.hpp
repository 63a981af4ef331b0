#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cubsurf/field/gf.hpp"

namespace cubsurf::detail {

using Mono = std::array<std::uint8_t, 4>;

struct Term {
  Mono m;
  field::Elem c;
};

/// Sparse polynomial in x0..x3, terms in strictly decreasing grevlex order.
using MPoly = std::vector<Term>;

MPoly make_mpoly(const field::GF& f, std::vector<Term> terms);

/// True iff the homogeneous ideal generated by `gens` has no zero in
/// projective 3-space over the algebraic closure, i.e. iff a Groebner basis
/// has a pure power of every variable among its leading monomials.
/// Throws BudgetExceeded after `max_pairs` S-pair reductions.
bool projective_zero_set_empty(const field::GF& f, const std::vector<MPoly>& gens, std::size_t max_pairs);

}  // namespace cubsurf::detail
