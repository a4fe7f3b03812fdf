#include "ci0/linalg.hpp"

#include <algorithm>

#include "ci0/errors.hpp"

namespace ci0 {

Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

bool is_zero_vec(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

void axpy(Vec& y, const Scalar& c, const Vec& x) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i].add_mul(c, x[i]);
}

Vec scaled(const Vec& v, const Scalar& c) {
  Vec r(v);
  for (auto& s : r) s *= c;
  return r;
}

std::size_t leading_index(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return v.size();
}

Vec Echelon::reduce(Vec v) const {
  if (v.size() != dim_) throw ContextMismatch("vector length does not match subspace");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = v[pivots_[r]];
    if (!c.is_zero()) axpy(v, -c, rows_[r]);
  }
  return v;
}

bool Echelon::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t p = leading_index(v);
  if (p == dim_) return false;
  Scalar inv = v[p].inverse();
  for (auto& s : v) s *= inv;
  for (auto& row : rows_) {
    if (!row[p].is_zero()) {
      Scalar c = -row[p];
      axpy(row, c, v);
    }
  }
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  std::size_t at = static_cast<std::size_t>(it - pivots_.begin());
  pivots_.insert(it, p);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
  return true;
}

bool Echelon::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

bool Echelon::contains_all(const Echelon& o) const {
  for (const auto& r : o.rows_)
    if (!contains(r)) return false;
  return true;
}

bool operator==(const Echelon& a, const Echelon& b) {
  if (a.dim_ != b.dim_ || a.pivots_ != b.pivots_) return false;
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    if (a.rows_[i] != b.rows_[i]) return false;
  return true;
}

namespace {

// Row reduction of [column^T | e_i] pairs. Rows whose left part vanishes
// carry kernel vectors in their right part.
struct Tracked {
  Vec left;
  Vec right;
};

}  // namespace

LinearSolution solve_columns(Field f, const std::vector<Vec>& columns, std::size_t rows,
                             const Vec* rhs) {
  const std::size_t m = columns.size();
  std::vector<Tracked> basis;  // pivot rows, left part normalized
  std::vector<std::size_t> piv;
  LinearSolution out;
  for (std::size_t i = 0; i < m; ++i) {
    if (columns[i].size() != rows) throw ContextMismatch("column length mismatch");
    Tracked t{columns[i], zero_vec(f, m)};
    t.right[i] = Scalar::one(f);
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const Scalar& c = t.left[piv[r]];
      if (c.is_zero()) continue;
      Scalar nc = -c;
      axpy(t.left, nc, basis[r].left);
      axpy(t.right, nc, basis[r].right);
    }
    std::size_t p = leading_index(t.left);
    if (p == rows) {
      out.kernel.push_back(std::move(t.right));
      continue;
    }
    Scalar inv = t.left[p].inverse();
    for (auto& s : t.left) s *= inv;
    for (auto& s : t.right) s *= inv;
    basis.push_back(std::move(t));
    piv.push_back(p);
  }
  if (rhs) {
    if (rhs->size() != rows) throw ContextMismatch("right-hand side length mismatch");
    Vec left = *rhs;
    Vec coef = zero_vec(f, m);
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const Scalar& c = left[piv[r]];
      if (c.is_zero()) continue;
      Scalar cc = c;
      axpy(left, -cc, basis[r].left);
      axpy(coef, cc, basis[r].right);
    }
    if (is_zero_vec(left)) out.particular = std::move(coef);
  }
  return out;
}

std::vector<Vec> kernel_of_columns(Field f, const std::vector<Vec>& columns, std::size_t rows) {
  return solve_columns(f, columns, rows, nullptr).kernel;
}

}  // namespace ci0
