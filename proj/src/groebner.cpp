#include "groebner.hpp"

#include <algorithm>
#include <deque>

#include "cubsurf/error.hpp"

namespace cubsurf::detail {
namespace {

int degree(const Mono& m) { return m[0] + m[1] + m[2] + m[3]; }

// grevlex: higher degree first, then the smaller exponent in the last
// differing variable wins.
bool greater(const Mono& a, const Mono& b) {
  const int da = degree(a);
  const int db = degree(b);
  if (da != db) return da > db;
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool divides(const Mono& a, const Mono& b) {
  return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2] && a[3] <= b[3];
}

Mono lcm(const Mono& a, const Mono& b) {
  return {std::max(a[0], b[0]), std::max(a[1], b[1]), std::max(a[2], b[2]), std::max(a[3], b[3])};
}

Mono quotient(const Mono& a, const Mono& b) {
  return {static_cast<std::uint8_t>(a[0] - b[0]), static_cast<std::uint8_t>(a[1] - b[1]),
          static_cast<std::uint8_t>(a[2] - b[2]), static_cast<std::uint8_t>(a[3] - b[3])};
}

Mono times(const Mono& a, const Mono& b) {
  return {static_cast<std::uint8_t>(a[0] + b[0]), static_cast<std::uint8_t>(a[1] + b[1]),
          static_cast<std::uint8_t>(a[2] + b[2]), static_cast<std::uint8_t>(a[3] + b[3])};
}

// a - c * x^m * b
MPoly sub_scaled(const field::GF& f, const MPoly& a, field::Elem c, const Mono& m, const MPoly& b) {
  MPoly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    const Mono bm = times(b[j].m, m);
    if (i == a.size() || greater(bm, a[i].m)) {
      out.push_back(Term{bm, f.neg(f.mul(c, b[j].c))});
      ++j;
    } else if (greater(a[i].m, bm)) {
      out.push_back(a[i++]);
    } else {
      const field::Elem v = f.sub(a[i].c, f.mul(c, b[j].c));
      if (!f.is_zero(v)) out.push_back(Term{bm, v});
      ++i;
      ++j;
    }
  }
  return out;
}

MPoly monic(const field::GF& f, MPoly p) {
  if (p.empty()) return p;
  const field::Elem inv = f.inv(p.front().c);
  for (auto& t : p) t.c = f.mul(t.c, inv);
  return p;
}

MPoly reduce(const field::GF& f, MPoly p, const std::vector<MPoly>& basis) {
  MPoly rem;
  while (!p.empty()) {
    const Term lt = p.front();
    const MPoly* divisor = nullptr;
    for (const MPoly& g : basis) {
      if (divides(g.front().m, lt.m)) {
        divisor = &g;
        break;
      }
    }
    if (divisor == nullptr) {
      rem.push_back(lt);
      p.erase(p.begin());
      continue;
    }
    // basis elements are monic
    p = sub_scaled(f, p, lt.c, quotient(lt.m, divisor->front().m), *divisor);
  }
  return monic(f, std::move(rem));
}

bool has_all_pure_powers(const std::vector<MPoly>& basis) {
  bool pure[4] = {false, false, false, false};
  for (const MPoly& g : basis) {
    const Mono& m = g.front().m;
    int nonzero = 0;
    int var = -1;
    for (int i = 0; i < 4; ++i) {
      if (m[i] != 0) {
        ++nonzero;
        var = i;
      }
    }
    if (nonzero == 1) pure[var] = true;
  }
  return pure[0] && pure[1] && pure[2] && pure[3];
}

}  // namespace

MPoly make_mpoly(const field::GF& f, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return greater(a.m, b.m); });
  MPoly out;
  for (const Term& t : terms) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = f.add(out.back().c, t.c);
    } else {
      out.push_back(t);
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [&](const Term& t) { return f.is_zero(t.c); }), out.end());
  return out;
}

bool projective_zero_set_empty(const field::GF& f, const std::vector<MPoly>& gens, std::size_t max_pairs) {
  std::vector<MPoly> basis;
  for (const MPoly& g : gens) {
    MPoly r = reduce(f, g, basis);
    if (!r.empty()) basis.push_back(std::move(r));
  }
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) pairs.emplace_back(j, i);
  }
  std::size_t processed = 0;
  while (!pairs.empty()) {
    if (has_all_pure_powers(basis)) return true;
    // Lowest lcm degree first.
    auto best = pairs.begin();
    int best_deg = 1 << 30;
    for (auto it = pairs.begin(); it != pairs.end(); ++it) {
      const int d = degree(lcm(basis[it->first].front().m, basis[it->second].front().m));
      if (d < best_deg) {
        best_deg = d;
        best = it;
      }
    }
    const auto [i, j] = *best;
    pairs.erase(best);
    const Mono& mi = basis[i].front().m;
    const Mono& mj = basis[j].front().m;
    const Mono l = lcm(mi, mj);
    if (times(mi, mj) == l) continue;  // coprime leading monomials
    if (++processed > max_pairs) throw Error(ErrorKind::kBudgetExceeded, "Groebner basis pair limit reached");
    MPoly s = sub_scaled(f, MPoly{}, f.neg(f.one()), quotient(l, mi), basis[i]);
    s = sub_scaled(f, s, f.one(), quotient(l, mj), basis[j]);
    MPoly r = reduce(f, std::move(s), basis);
    if (r.empty()) continue;
    basis.push_back(std::move(r));
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
  }
  return has_all_pure_powers(basis);
}

}  // namespace cubsurf::detail
