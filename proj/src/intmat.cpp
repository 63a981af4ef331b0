#include "cubsurf/intmat.hpp"

#include <algorithm>
#include <optional>

#include "cubsurf/error.hpp"

namespace cubsurf {
namespace {

struct Overflow {};

// Checked arithmetic for the two integer types the lattice runs on.
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t neg(std::int64_t a) { return sub(0, a); }
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}
inline bool is_zero(std::int64_t a) { return a == 0; }
inline bool is_neg(std::int64_t a) { return a < 0; }

inline mpz_class add(const mpz_class& a, const mpz_class& b) { return a + b; }
inline mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
inline mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class neg(const mpz_class& a) { return -a; }
inline mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
inline bool is_neg(const mpz_class& a) { return sgn(a) < 0; }

template <class T>
T from_mpz(const mpz_class& v);
template <>
std::int64_t from_mpz<std::int64_t>(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Overflow{};
  return v.get_si();
}
inline mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
inline mpz_class to_mpz(const mpz_class& v) { return v; }

// g = s a + t b with g > 0, for a, b not both zero.
template <class T>
void ext_gcd(const T& a, const T& b, T& g, T& s, T& t) {
  T r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (!is_zero(r1)) {
    const T q = floor_div(r0, r1);
    T tmp = sub(r0, mul(q, r1));
    r0 = r1;
    r1 = tmp;
    tmp = sub(s0, mul(q, s1));
    s0 = s1;
    s1 = tmp;
    tmp = sub(t0, mul(q, t1));
    t0 = t1;
    t1 = tmp;
  }
  if (is_neg(r0)) {
    r0 = neg(r0);
    s0 = neg(s0);
    t0 = neg(t0);
  }
  g = r0;
  s = s0;
  t = t0;
}

template <class T>
class Core {
 public:
  explicit Core(std::size_t n) : n_(n), row_at_(n, -1) {}

  std::size_t rank() const { return rows_.size(); }

  // Reduces r at every pivot column; leaves remainders in [0, pivot).
  void reduce_after(std::vector<T>& r, int c0) const {
    for (std::size_t c = static_cast<std::size_t>(c0 + 1); c < n_; ++c) {
      const int k = row_at_[c];
      if (k < 0 || is_zero(r[c])) continue;
      const T& piv = rows_[k][c];
      const T q = floor_div(r[c], piv);
      if (!is_zero(q)) axpy(r, q, k);
    }
  }

  bool insert(std::vector<T> r) {
    bool changed = false;
    for (;;) {
      int c = -1;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_zero(r[j])) continue;
        const int k = row_at_[j];
        if (k < 0) {
          c = static_cast<int>(j);
          break;
        }
        const T q = floor_div(r[j], rows_[k][j]);
        if (!is_zero(q)) axpy(r, q, k);
        if (!is_zero(r[j])) {
          c = static_cast<int>(j);
          break;
        }
      }
      if (c < 0) return changed;
      changed = true;
      const int k = row_at_[c];
      if (k < 0) {
        if (is_neg(r[c])) {
          for (T& x : r) x = neg(x);
        }
        reduce_after(r, c);
        rows_.push_back(std::move(r));
        pivot_.push_back(c);
        nz_.emplace_back();
        row_at_[c] = static_cast<int>(rows_.size() - 1);
        touch(rows_.size() - 1);
        fix_column(c);
        return true;
      }
      // Replace the pivot row by a gcd combination; the rest continues.
      const T a = r[c];
      const T b = rows_[k][c];
      T g, s, t;
      ext_gcd(a, b, g, s, t);
      const T bg = floor_div(b, g);
      const T ag = floor_div(a, g);
      std::vector<T> nb(n_), r2(n_);
      for (std::size_t j = static_cast<std::size_t>(c); j < n_; ++j) {
        nb[j] = add(mul(s, r[j]), mul(t, rows_[k][j]));
        r2[j] = sub(mul(bg, r[j]), mul(ag, rows_[k][j]));
      }
      reduce_after(nb, c);
      rows_[k] = std::move(nb);
      touch(k);
      fix_column(c);
      r = std::move(r2);
    }
  }

  std::vector<T> reduce(std::vector<T> r) const {
    reduce_after(r, -1);
    return r;
  }

  IntMatrix basis() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_[a] < pivot_[b]; });
    IntMatrix out;
    for (std::size_t i : order) {
      std::vector<mpz_class> row(n_);
      for (std::size_t j = 0; j < n_; ++j) row[j] = to_mpz(rows_[i][j]);
      out.push_back(std::move(row));
    }
    return out;
  }

  std::pair<std::size_t, std::vector<mpz_class>> quotient() const {
    std::vector<std::size_t> special;
    for (std::size_t c = 0; c < n_; ++c) {
      const int k = row_at_[c];
      if (k < 0 || rows_[k][c] != T(1)) special.push_back(c);
    }
    IntMatrix m;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i][pivot_[i]] == T(1)) continue;
      std::vector<mpz_class> row;
      row.reserve(special.size());
      for (std::size_t c : special) row.push_back(to_mpz(rows_[i][c]));
      m.push_back(std::move(row));
    }
    std::vector<mpz_class> factors;
    std::size_t nonzero = 0;
    if (!m.empty()) {
      for (const mpz_class& d : smith_normal_form(m).diagonal()) {
        if (d == 0) continue;
        ++nonzero;
        if (d != 1) factors.push_back(d);
      }
    }
    return {special.size() - nonzero, factors};
  }

 private:
  void axpy(std::vector<T>& r, const T& q, int k) const {
    const auto& b = rows_[k];
    for (std::uint32_t j : nz_[k]) r[j] = sub(r[j], mul(q, b[j]));
  }

  void touch(std::size_t k) {
    nz_[k].clear();
    for (std::size_t j = 0; j < n_; ++j) {
      if (!is_zero(rows_[k][j])) nz_[k].push_back(static_cast<std::uint32_t>(j));
    }
  }

  // Brings column c of every earlier row back into [0, pivot).
  void fix_column(int c) {
    const int k = row_at_[c];
    const T& piv = rows_[k][c];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (pivot_[i] >= c) continue;
      const T& x = rows_[i][c];
      if (!is_neg(x) && x < piv) continue;
      std::vector<T> r = rows_[i];
      axpy(r, floor_div(x, piv), k);
      reduce_after(r, c);
      rows_[i] = std::move(r);
      touch(i);
    }
  }

  std::size_t n_;
  std::vector<std::vector<T>> rows_;
  std::vector<int> pivot_;
  std::vector<std::vector<std::uint32_t>> nz_;
  std::vector<int> row_at_;
};

template <class T>
std::vector<T> convert(const std::vector<mpz_class>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const mpz_class& x : v) out.push_back(from_mpz<T>(x));
  return out;
}

template <class T>
std::vector<mpz_class> to_mpz_vec(const std::vector<T>& v) {
  std::vector<mpz_class> out;
  out.reserve(v.size());
  for (const T& x : v) out.push_back(to_mpz(x));
  return out;
}

}  // namespace

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t r = a.size();
  const std::size_t k = b.size();
  const std::size_t c = k == 0 ? 0 : b[0].size();
  IntMatrix out(r, std::vector<mpz_class>(c, 0));
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i].size() != k) throw Error(ErrorKind::kInvalidArgument, "matrix shapes do not match");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

mpz_class determinant(const IntMatrix& m0) {
  const std::size_t n = m0.size();
  for (const auto& row : m0) {
    if (row.size() != n) throw Error(ErrorKind::kInvalidArgument, "determinant needs a square matrix");
  }
  if (n == 0) return 1;
  IntMatrix m = m0;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.size();
  const mpz_class det = determinant(m);
  if (det != 1 && det != -1) throw Error(ErrorKind::kInvalidArgument, "matrix is not unimodular");
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[c], a[p]);
    const mpq_class inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix out(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j].get_num();
  }
  return out;
}

std::vector<mpz_class> SmithForm::diagonal() const {
  std::vector<mpz_class> out;
  const std::size_t r = d.size();
  const std::size_t c = r == 0 ? 0 : d[0].size();
  for (std::size_t i = 0; i < std::min(r, c); ++i) out.push_back(d[i][i]);
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  SmithForm s{identity_matrix(rows), m, identity_matrix(cols)};
  IntMatrix& a = s.d;
  auto row_sub = [&](std::size_t i, std::size_t t, const mpz_class& q) {  // row_i -= q row_t
    for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[t][j];
    for (std::size_t j = 0; j < rows; ++j) s.u[i][j] -= q * s.u[t][j];
  };
  auto col_sub = [&](std::size_t j, std::size_t t, const mpz_class& q) {  // col_j -= q col_t
    for (std::size_t i = 0; i < rows; ++i) a[i][j] -= q * a[i][t];
    for (std::size_t i = 0; i < cols; ++i) s.v[i][j] -= q * s.v[i][t];
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(s.u[i], s.u[j]);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : s.v) std::swap(row[i], row[j]);
  };
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t bi = rows;
      std::size_t bj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          if (bi == rows || abs(a[i][j]) < abs(a[bi][bj])) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) return s;
      row_swap(t, bi);
      col_swap(t, bj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        row_sub(i, t, floor_div(a[i][t], a[t][t]));
        dirty = dirty || a[i][t] != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        col_sub(j, t, floor_div(a[t][j], a[t][t]));
        dirty = dirty || a[t][j] != 0;
      }
      if (dirty) continue;
      // Divisibility of the trailing block by the pivot.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      row_sub(t, bad, -1);
    }
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) a[t][j] = -a[t][j];
      for (std::size_t j = 0; j < rows; ++j) s.u[t][j] = -s.u[t][j];
    }
  }
  return s;
}

struct HermiteLattice::Impl {
  std::size_t n;
  std::optional<Core<std::int64_t>> small;
  std::optional<Core<mpz_class>> big;
  std::vector<std::vector<mpz_class>> accepted;

  void promote() {
    small.reset();
    big.emplace(n);
    for (const auto& row : accepted) big->insert(row);
  }
};

HermiteLattice::HermiteLattice(std::size_t columns) : impl_(std::make_unique<Impl>()) {
  impl_->n = columns;
  impl_->small.emplace(columns);
}
HermiteLattice::HermiteLattice(const HermiteLattice& o) : impl_(std::make_unique<Impl>(*o.impl_)) {}
HermiteLattice& HermiteLattice::operator=(const HermiteLattice& o) {
  impl_ = std::make_unique<Impl>(*o.impl_);
  return *this;
}
HermiteLattice::HermiteLattice(HermiteLattice&&) noexcept = default;
HermiteLattice& HermiteLattice::operator=(HermiteLattice&&) noexcept = default;
HermiteLattice::~HermiteLattice() = default;

std::size_t HermiteLattice::columns() const { return impl_->n; }
std::size_t HermiteLattice::rank() const { return impl_->small ? impl_->small->rank() : impl_->big->rank(); }
bool HermiteLattice::uses_big_integers() const { return !impl_->small; }

bool HermiteLattice::insert(const std::vector<mpz_class>& row) {
  if (row.size() != impl_->n) throw Error(ErrorKind::kInvalidArgument, "row length does not match the lattice");
  bool changed = false;
  if (impl_->small) {
    try {
      changed = impl_->small->insert(convert<std::int64_t>(row));
    } catch (const Overflow&) {
      impl_->promote();
    }
  }
  if (!impl_->small) changed = impl_->big->insert(row);
  if (changed) impl_->accepted.push_back(row);
  return changed;
}

bool HermiteLattice::insert(const SparseRow& row) {
  std::vector<mpz_class> dense(impl_->n, 0);
  for (const auto& [c, v] : row) {
    if (c >= impl_->n) throw Error(ErrorKind::kInvalidArgument, "column out of range");
    dense[c] += mpz_class(static_cast<long>(v));
  }
  return insert(dense);
}

std::vector<mpz_class> HermiteLattice::reduce(std::vector<mpz_class> v) const {
  if (v.size() != impl_->n) throw Error(ErrorKind::kInvalidArgument, "vector length does not match the lattice");
  if (impl_->small) {
    try {
      return to_mpz_vec(impl_->small->reduce(convert<std::int64_t>(v)));
    } catch (const Overflow&) {
      Core<mpz_class> big(impl_->n);
      for (const auto& row : impl_->accepted) big.insert(row);
      return big.reduce(std::move(v));
    }
  }
  return impl_->big->reduce(std::move(v));
}

bool HermiteLattice::contains(const std::vector<mpz_class>& v) const {
  const auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const mpz_class& x) { return x == 0; });
}

IntMatrix HermiteLattice::basis() const { return impl_->small ? impl_->small->basis() : impl_->big->basis(); }

std::pair<std::size_t, std::vector<mpz_class>> HermiteLattice::quotient() const {
  return impl_->small ? impl_->small->quotient() : impl_->big->quotient();
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  if (m.empty()) return {};
  HermiteLattice l(m[0].size());
  for (const auto& row : m) l.insert(row);
  return l.basis();
}

}  // namespace cubsurf
