#include "ci0/nice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "ci0/errors.hpp"

namespace ci0 {

AlgMatrix::AlgMatrix(AlgebraPtr alg, std::size_t rows, std::size_t cols)
    : alg_(std::move(alg)), rows_(rows), cols_(cols), e_(rows * cols, alg_->zero()) {}

AlgMatrix AlgMatrix::identity(const AlgebraPtr& alg, std::size_t n) {
  AlgMatrix m(alg, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = alg->one();
  return m;
}

AlgMatrix AlgMatrix::diagonal(const Row& d) {
  if (d.empty()) throw PreconditionError("empty diagonal");
  AlgMatrix m(d[0].algebra(), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

AlgMatrix AlgMatrix::from_columns(const AlgebraPtr& alg, std::size_t rows, const std::vector<Row>& cols) {
  AlgMatrix m(alg, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

AlgMatrix AlgMatrix::parse(const AlgebraPtr& alg, const std::vector<std::vector<std::string>>& entries) {
  if (entries.empty()) throw PreconditionError("matrix has no rows");
  AlgMatrix m(alg, entries.size(), entries[0].size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != m.cols_) throw PreconditionError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = alg->parse(entries[i][j]);
  }
  return m;
}

Row AlgMatrix::column(std::size_t j) const {
  Row c;
  for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
  return c;
}

void AlgMatrix::set_column(std::size_t j, const Row& c) {
  if (c.size() != rows_) throw ContextMismatch("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
}

AlgMatrix AlgMatrix::minor_matrix(std::size_t r, std::size_t c) const {
  AlgMatrix m(alg_, rows_ - 1, cols_ - 1);
  for (std::size_t i = 0, ii = 0; i < rows_; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, jj = 0; j < cols_; ++j) {
      if (j == c) continue;
      m(ii, jj++) = (*this)(i, j);
    }
    ++ii;
  }
  return m;
}

std::vector<std::vector<std::string>> AlgMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
  return out;
}

std::string AlgMatrix::to_string() const {
  std::string s = "[";
  auto rows = to_strings();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < rows[i].size(); ++j) s += (j ? ", " : "") + rows[i][j];
    s += "]";
  }
  return s + "]";
}

bool AlgMatrix::is_zero() const {
  for (const auto& a : e_)
    if (!a.is_zero()) return false;
  return true;
}

AlgMatrix AlgMatrix::operator+(const AlgMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ContextMismatch("matrix shape mismatch");
  AlgMatrix r(*this);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
  return r;
}

AlgMatrix AlgMatrix::operator-(const AlgMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ContextMismatch("matrix shape mismatch");
  AlgMatrix r(*this);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
  return r;
}

AlgMatrix AlgMatrix::operator*(const AlgMatrix& o) const {
  if (cols_ != o.rows_) throw ContextMismatch("matrix shape mismatch");
  AlgMatrix r(alg_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const AlgElement& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

AlgMatrix AlgMatrix::scaled(const AlgElement& a) const {
  AlgMatrix r(*this);
  for (auto& x : r.e_) x = x * a;
  return r;
}

bool operator==(const AlgMatrix& a, const AlgMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

// ---------------------------------------------------------------------------

AlgElement det(const AlgMatrix& m) {
  if (!m.is_square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > kMaxDetSize) throw PreconditionError("determinants are limited to size " + std::to_string(kMaxDetSize));
  const auto& A = m.algebra();
  if (n == 0) return A->one();
  // Laplace expansion along rows, memoized on the set of used columns.
  std::vector<std::optional<AlgElement>> memo(std::size_t{1} << n);
  auto rec = [&](auto&& self, std::size_t mask) -> AlgElement {
    std::size_t r = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (r == n) return A->one();
    if (memo[mask]) return *memo[mask];
    AlgElement acc = A->zero();
    int skipped = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const AlgElement& a = m(r, j);
      if (!a.is_zero()) {
        AlgElement sub = self(self, mask | (std::size_t{1} << j));
        if (!sub.is_zero()) {
          AlgElement t = a * sub;
          if (skipped % 2)
            acc -= t;
          else
            acc += t;
        }
      }
      ++skipped;
    }
    memo[mask] = acc;
    return acc;
  };
  return rec(rec, 0);
}

AlgMatrix adjugate(const AlgMatrix& m) {
  const std::size_t n = m.rows();
  AlgMatrix adj(m.algebra(), n, n);
  if (n == 1) {
    adj(0, 0) = m.algebra()->one();
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      AlgElement c = det(m.minor_matrix(i, j));
      adj(j, i) = (i + j) % 2 ? -c : c;
    }
  return adj;
}

DetAdj det_adj(const AlgMatrix& m) {
  DetAdj r{det(m), adjugate(m)};
  AlgMatrix d = AlgMatrix::identity(m.algebra(), m.rows()).scaled(r.det);
  if (m * r.adj != d || r.adj * m != d) throw InvariantViolation("adjugate identity failed");
  return r;
}

bool is_invertible(const AlgMatrix& m) { return det(m).is_unit(); }

AlgMatrix inverse(const AlgMatrix& m) {
  AlgElement d = det(m);
  if (!d.is_unit()) throw PreconditionError("matrix is not invertible");
  return adjugate(m).scaled(d.inverse());
}

Row row_times(const Row& x, const AlgMatrix& phi) {
  if (x.size() != phi.rows()) throw ContextMismatch("row length does not match the matrix");
  Row out;
  for (std::size_t j = 0; j < phi.cols(); ++j) {
    AlgElement acc = phi.algebra()->zero();
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * phi(i, j);
    out.push_back(std::move(acc));
  }
  return out;
}

Row variables_row(const AlgebraPtr& alg) { return alg->variables(); }

AlgMatrix project(const Quotient& q, const AlgMatrix& m) {
  AlgMatrix r(q.target(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = q.project(m(i, j));
  return r;
}

AlgMatrix lift(const Quotient& q, const AlgMatrix& m) {
  AlgMatrix r(q.source(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = q.lift(m(i, j));
  return r;
}

Row project(const Quotient& q, const Row& r) {
  Row out;
  for (const auto& a : r) out.push_back(q.project(a));
  return out;
}

Row lift(const Quotient& q, const Row& r) {
  Row out;
  for (const auto& a : r) out.push_back(q.lift(a));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Row default_row(const AlgMatrix& phi, const Row* row) {
  if (row) return *row;
  if (phi.rows() != phi.algebra()->nvars())
    throw PreconditionError("matrix size " + std::to_string(phi.rows()) + " differs from the number of variables");
  return phi.algebra()->variables();
}

void check_socle_identity(const IdealSubspace& J, const AlgElement& d) {
  const auto& A = J.algebra();
  IdealSubspace lhs = colon(J, maximal_ideal(A));
  IdealSubspace rhs = ideal_sum(J, principal_ideal(d));
  if (lhs != rhs) throw InvariantViolation("socle identity J : M = J + det A failed");
}

}  // namespace

NiceCheck is_x_nice(const AlgMatrix& phi, const Row* row) {
  if (!phi.is_square()) throw PreconditionError("x-nice matrices are square");
  Row x = default_row(phi, row);
  NiceCheck out;
  out.ideal = ideal_span(phi.algebra(), row_times(x, phi));
  out.det = det(phi);
  out.nice = !out.ideal.contains(out.det);
  if (out.nice) check_socle_identity(out.ideal, out.det);
  return out;
}

bool is_wiebe(const AlgMatrix& psi, const Row* row) {
  if (!psi.is_square()) throw PreconditionError("Wiebe matrices are square");
  Row x = default_row(psi, row);
  for (const auto& v : row_times(x, psi))
    if (!v.is_zero()) return false;
  AlgElement d = det(psi);
  if (d.is_zero()) return false;
  if (socle(psi.algebra()) != principal_ideal(d)) throw InvariantViolation("Wiebe determinant does not span the socle");
  return true;
}

Vec flatten(const Row& column) {
  Vec v;
  for (const auto& a : column) v.insert(v.end(), a.coords().begin(), a.coords().end());
  return v;
}

Row unflatten(const AlgebraPtr& alg, const Vec& v, std::size_t n) {
  const std::size_t d = alg->dim();
  Row out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(alg, Vec(v.begin() + i * d, v.begin() + (i + 1) * d));
  return out;
}

SyzygySet syzygies(const Row& row, bool minimize) {
  if (row.empty()) throw PreconditionError("empty row");
  const auto& A = row[0].algebra();
  const std::size_t n = row.size(), d = A->dim();
  std::vector<Vec> cols;
  cols.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < d; ++t) cols.push_back(A->mul_basis(t, row[i].coords()));
  Echelon ker(A->field(), n * d);
  for (auto& k : kernel_of_columns(A->field(), cols, d)) ker.insert(std::move(k));
  SyzygySet out;
  out.kernel_dim = ker.rank();
  out.minimized = minimize;
  if (!minimize) {
    for (const auto& r : ker.rows()) out.columns.push_back(unflatten(A, r, n));
    return out;
  }
  Echelon msyz(A->field(), n * d);
  for (const auto& r : ker.rows()) {
    Row c = unflatten(A, r, n);
    for (std::size_t k = 0; k < A->nvars(); ++k) {
      Row xc;
      for (const auto& a : c) xc.emplace_back(A, A->mul_var(k, a.coords()));
      msyz.insert(flatten(xc));
    }
  }
  for (const auto& r : ker.rows())
    if (msyz.insert(r)) out.columns.push_back(unflatten(A, r, n));
  return out;
}

std::size_t enumerate_subsets(std::size_t m, std::size_t k, std::uint64_t seed, std::size_t cap,
                              const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > m) return 0;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  if (seed) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t count = 0;
  std::vector<std::size_t> pick(k);
  for (;;) {
    if (count >= cap) throw Inconclusive("minor enumeration cap of " + std::to_string(cap) + " reached");
    for (std::size_t i = 0; i < k; ++i) pick[i] = order[idx[i]];
    ++count;
    if (visit(pick)) return count;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return count;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

FittingResult fitting_delta0_detail(const Row& row, bool minimized, std::size_t cap) {
  const auto& A = row.at(0).algebra();
  const std::size_t n = row.size();
  SyzygySet syz = syzygies(row, minimized);
  FittingResult out;
  out.generators = syz.columns.size();
  out.ideal = zero_ideal(A);
  IdealSubspace bound = annihilator(A, row);
  if (bound.is_zero()) return out;
  Echelon acc(A->field(), A->dim());
  out.minors = enumerate_subsets(syz.columns.size(), n, 0, cap, [&](const std::vector<std::size_t>& pick) {
    std::vector<Row> cols;
    for (auto j : pick) cols.push_back(syz.columns[j]);
    AlgElement m = det(AlgMatrix::from_columns(A, n, cols));
    if (!m.is_zero() && !acc.contains(m.coords())) {
      out.ideal = ideal_sum(out.ideal, principal_ideal(m));
      acc = out.ideal.echelon();
      if (out.ideal == bound) {
        out.early_exit = true;
        return true;
      }
    }
    return false;
  });
  if (!bound.contains(out.ideal)) throw InvariantViolation("Fitting ideal exceeds the annihilator");
  return out;
}

IdealSubspace fitting_delta0(const Row& row, bool minimized, std::size_t cap) {
  return fitting_delta0_detail(row, minimized, cap).ideal;
}

namespace {

// First n-subset of columns whose determinant satisfies `good`.
std::optional<AlgMatrix> first_good_minor(const AlgebraPtr& A, const std::vector<Row>& columns, std::size_t n,
                                          std::uint64_t seed, std::size_t cap, std::size_t& examined,
                                          const std::function<bool(const AlgElement&)>& good) {
  std::optional<AlgMatrix> found;
  examined = enumerate_subsets(columns.size(), n, seed, cap, [&](const std::vector<std::size_t>& pick) {
    std::vector<Row> cols;
    for (auto j : pick) cols.push_back(columns[j]);
    AlgMatrix m = AlgMatrix::from_columns(A, n, cols);
    if (good(det(m))) {
      found = std::move(m);
      return true;
    }
    return false;
  });
  return found;
}

void verify_certificate(const AlgMatrix& phi, const IdealSubspace& I) {
  NiceCheck c = is_x_nice(phi);
  if (!c.nice) throw InvariantViolation("certificate is not x-nice");
  if (c.ideal != I) throw InvariantViolation("certificate belongs to a different ideal");
}

}  // namespace

Ci0Verdict ci0_test(const IdealSubspace& I, std::uint64_t seed, std::size_t cap) {
  const auto& A = I.algebra();
  if (I.is_unit()) throw PreconditionError("the unit ideal is not proper");
  const std::size_t n = A->nvars();
  Quotient q = quotient_algebra(I);
  const auto& Ab = q.target();
  SyzygySet syz = syzygies(Ab->variables(), true);
  Ci0Verdict v;
  v.syzygy_generators = syz.columns.size();
  auto found = first_good_minor(Ab, syz.columns, n, seed, cap, v.minors_examined,
                                [](const AlgElement& d) { return !d.is_zero(); });
  if (!found) {
    v.refutation = "delta0 of the maximal ideal of A/I vanishes: " + std::to_string(v.syzygy_generators) +
                   " minimal syzygies, " + std::to_string(v.minors_examined) + " minors examined";
    return v;
  }
  AlgMatrix phi = lift(q, *found);
  verify_certificate(phi, I);
  v.is_ci0 = true;
  v.certificate = std::move(phi);
  return v;
}

Ci0Verdict ann_ci0_test(const AlgElement& b, std::uint64_t seed, std::size_t cap) {
  if (b.is_zero()) throw PreconditionError("b must be nonzero");
  const auto& A = b.algebra();
  const std::size_t n = A->nvars();
  Row bx;
  for (const auto& x : A->variables()) bx.push_back(b * x);
  SyzygySet syz = syzygies(bx, true);
  Ci0Verdict v;
  v.syzygy_generators = syz.columns.size();
  auto found = first_good_minor(A, syz.columns, n, seed, cap, v.minors_examined,
                                [&](const AlgElement& d) { return !(b * d).is_zero(); });
  if (!found) {
    v.refutation = "b * det vanishes on every minor: " + std::to_string(v.syzygy_generators) +
                   " minimal syzygies, " + std::to_string(v.minors_examined) + " minors examined";
    return v;
  }
  verify_certificate(*found, annihilator(b));
  v.is_ci0 = true;
  v.certificate = std::move(*found);
  return v;
}

// ---------------------------------------------------------------------------

AlgMatrix koszul_boundary(const AlgebraPtr& alg) {
  const std::size_t n = alg->nvars();
  auto x = alg->variables();
  AlgMatrix m(alg, n, n * (n - 1) / 2);
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++c) {
      m(i, c) = x[j];
      m(j, c) = -x[i];
    }
  return m;
}

Echelon koszul_image(const AlgebraPtr& alg) {
  const std::size_t n = alg->nvars(), d = alg->dim();
  AlgMatrix delta = koszul_boundary(alg);
  Echelon e(alg->field(), n * d);
  for (std::size_t c = 0; c < delta.cols(); ++c) {
    Row col = delta.column(c);
    for (std::size_t t = 0; t < d; ++t) {
      Row v;
      for (const auto& a : col) v.emplace_back(alg, alg->mul_basis(t, a.coords()));
      e.insert(flatten(v));
    }
  }
  return e;
}

bool in_koszul_image(const Row& column) {
  const auto& A = column.at(0).algebra();
  if (column.size() != A->nvars()) throw PreconditionError("column length differs from the number of variables");
  return koszul_image(A).contains(flatten(column));
}

bool in_koszul_ideal(const AlgMatrix& alpha) {
  const auto& A = alpha.algebra();
  if (alpha.rows() != A->nvars()) throw PreconditionError("row count differs from the number of variables");
  Echelon im = koszul_image(A);
  for (std::size_t j = 0; j < alpha.cols(); ++j)
    if (!im.contains(flatten(alpha.column(j)))) return false;
  return true;
}

bool nice_equivalent(const AlgMatrix& phi1, const AlgMatrix& phi2) {
  NiceCheck a = is_x_nice(phi1), b = is_x_nice(phi2);
  if (!a.nice || !b.nice) throw PreconditionError("equivalence is defined for x-nice matrices");
  return a.ideal == b.ideal;
}

namespace {

// Affine solution space of phi * v + w = target (w in `extra`), projected to v.
struct ColumnSystem {
  bool solvable = false;
  Vec particular;
  std::vector<Vec> kernel;
};

ColumnSystem solve_column(const AlgMatrix& phi, const Row& target, const Echelon* extra) {
  const auto& A = phi.algebra();
  const std::size_t n = phi.cols(), d = A->dim(), rows = phi.rows() * d;
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < n; ++i) {
    Row c = phi.column(i);
    for (std::size_t t = 0; t < d; ++t) {
      Row v;
      for (const auto& a : c) v.emplace_back(A, A->mul_basis(t, a.coords()));
      cols.push_back(flatten(v));
    }
  }
  const std::size_t nv = cols.size();
  if (extra)
    for (const auto& r : extra->rows()) cols.push_back(r);
  Vec rhs = flatten(target);
  LinearSolution sol = solve_columns(A->field(), cols, rows, &rhs);
  ColumnSystem out;
  if (!sol.particular) return out;
  out.solvable = true;
  out.particular.assign(sol.particular->begin(), sol.particular->begin() + static_cast<std::ptrdiff_t>(nv));
  Echelon k(A->field(), nv);
  for (const auto& v : sol.kernel) k.insert(Vec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nv)));
  out.kernel = k.rows();
  return out;
}

}  // namespace

TranslateResult membership_in_translate(const AlgMatrix& phi1, const AlgMatrix& phi2, std::uint64_t seed,
                                        std::size_t attempts) {
  const auto& A = phi1.algebra();
  const std::size_t n = phi1.cols();
  Echelon im = koszul_image(A);
  std::vector<ColumnSystem> systems;
  TranslateResult out;
  for (std::size_t j = 0; j < n; ++j) {
    systems.push_back(solve_column(phi2, phi1.column(j), &im));
    if (!systems.back().solvable) return out;
  }
  out.solvable = true;
  std::mt19937_64 rng(seed);
  for (std::size_t a = 0; a < attempts; ++a) {
    ++out.attempts;
    std::vector<Row> cols;
    for (const auto& s : systems) {
      Vec v = s.particular;
      if (a > 0)
        for (const auto& k : s.kernel) axpy(v, Scalar::random(A->field(), rng, 3), k);
      cols.push_back(unflatten(A, v, phi2.cols()));
    }
    AlgMatrix theta = AlgMatrix::from_columns(A, phi2.cols(), cols);
    if (!is_invertible(theta)) continue;
    AlgMatrix alpha = phi1 - phi2 * theta;
    if (!in_koszul_ideal(alpha)) throw InvariantViolation("translate solver produced alpha outside N");
    out.theta = std::move(theta);
    out.alpha = std::move(alpha);
    return out;
  }
  return out;
}

std::optional<AlgMatrix> right_factor(const AlgMatrix& phi, const AlgMatrix& psi) {
  const auto& A = phi.algebra();
  std::vector<Row> cols;
  for (std::size_t j = 0; j < psi.cols(); ++j) {
    ColumnSystem s = solve_column(phi, psi.column(j), nullptr);
    if (!s.solvable) return std::nullopt;
    cols.push_back(unflatten(A, s.particular, phi.cols()));
  }
  AlgMatrix gamma = AlgMatrix::from_columns(A, phi.cols(), cols);
  if (phi * gamma != psi) throw InvariantViolation("right factor does not reassemble");
  return gamma;
}

AlgMatrix perturb_by_koszul(const AlgMatrix& phi, const AlgMatrix& alpha) {
  if (!in_koszul_ideal(alpha)) throw PreconditionError("alpha is not in the Koszul ideal");
  NiceCheck base = is_x_nice(phi);
  if (!base.nice) throw PreconditionError("phi is not x-nice");
  AlgMatrix out = phi + alpha;
  NiceCheck c = is_x_nice(out);
  if (!c.nice || c.ideal != base.ideal) throw InvariantViolation("Koszul perturbation changed the ideal");
  return out;
}

// ---------------------------------------------------------------------------

Diagonalization diagonalize_unit_pivot(const AlgMatrix& gamma) {
  if (!gamma.is_square()) throw PreconditionError("square matrix required");
  const auto& A = gamma.algebra();
  const std::size_t n = gamma.rows();
  AlgElement dg = det(gamma);
  if (dg.is_unit() || maximal_ideal_power(A, 2).contains(dg))
    throw PreconditionError("det(gamma) must lie in M \\ M^2");
  AlgMatrix G = gamma, T1 = AlgMatrix::identity(A, n), T2 = AlgMatrix::identity(A, n);
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(G(a, j), G(b, j));
      std::swap(T1(a, j), T1(b, j));
    }
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(G(i, a), G(i, b));
      std::swap(T2(i, a), T2(i, b));
    }
  };
  for (std::size_t p = 1; p < n; ++p) {
    std::vector<std::size_t> free = {0};
    for (std::size_t k = p; k < n; ++k) free.push_back(k);
    long pr = -1, pc = -1;
    if (G(p, p).is_unit()) {
      pr = pc = static_cast<long>(p);
    } else {
      for (auto r : free) {
        for (auto c : free)
          if (G(r, c).is_unit()) {
            pr = static_cast<long>(r);
            pc = static_cast<long>(c);
            break;
          }
        if (pr >= 0) break;
      }
    }
    if (pr < 0) throw InvariantViolation("no unit pivot although det lies in M \\ M^2");
    swap_rows(p, static_cast<std::size_t>(pr));
    swap_cols(p, static_cast<std::size_t>(pc));
    AlgElement inv = G(p, p).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      G(p, j) = G(p, j) * inv;
      T1(p, j) = T1(p, j) * inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == p || G(r, p).is_zero()) continue;
      AlgElement f = G(r, p);
      for (std::size_t j = 0; j < n; ++j) {
        G(r, j) -= f * G(p, j);
        T1(r, j) -= f * T1(p, j);
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (c == p || G(p, c).is_zero()) continue;
      AlgElement f = G(p, c);
      for (std::size_t i = 0; i < n; ++i) {
        G(i, c) -= f * G(i, p);
        T2(i, c) -= f * T2(i, p);
      }
    }
  }
  Diagonalization out{T1, T2, G(0, 0)};
  Row diag(n, A->one());
  diag[0] = out.d;
  if (T1 * gamma * T2 != AlgMatrix::diagonal(diag)) throw InvariantViolation("diagonalization does not reassemble");
  if (!is_invertible(T1) || !is_invertible(T2)) throw InvariantViolation("diagonalization used a singular transform");
  return out;
}

unsigned first_row_exponent_formula(const IdealSubspace& J) {
  const auto& A = J.algebra();
  Row x = A->variables();
  Row rest(x.begin() + 1, x.end());
  IdealSubspace HJ = ideal_sum(ideal_span(A, rest), J);
  AlgElement x1 = A->var(0);
  AlgElement p = A->one();
  unsigned i = 0;
  if (HJ.contains(p)) throw PreconditionError("H + J is the unit ideal");
  while (!HJ.contains(p * x1)) {
    p = p * x1;
    ++i;
  }
  return i;
}

FirstRowNormalForm normalize_first_row(const AlgMatrix& phi) {
  const auto& A = phi.algebra();
  const std::size_t n = A->nvars(), d = A->dim();
  NiceCheck base = is_x_nice(phi);
  if (!base.nice) throw PreconditionError("phi is not x-nice");
  auto x = A->variables();
  Row rest(x.begin() + 1, x.end());
  IdealSubspace H = ideal_span(A, rest);
  std::vector<AlgElement> xpow = {A->one()};
  while (!H.contains(xpow.back())) xpow.push_back(xpow.back() * x[0]);
  xpow.pop_back();
  const std::size_t m = xpow.size();

  // a = sum_k c_k x_1^k + sum_{i>=2} x_i h_i, solved over K.
  std::vector<Vec> cols;
  for (const auto& p : xpow) cols.push_back(p.coords());
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t t = 0; t < d; ++t) cols.push_back(A->mul_basis(t, x[i].coords()));

  AlgMatrix work = phi;
  std::vector<long> s(n, -1);
  std::vector<AlgElement> unit(n, A->zero());
  for (std::size_t j = 0; j < n; ++j) {
    Vec rhs = work(0, j).coords();
    LinearSolution sol = solve_columns(A->field(), cols, d, &rhs);
    if (!sol.particular) throw InvariantViolation("first-row entry has no x_1 / H decomposition");
    const Vec& c = *sol.particular;
    for (std::size_t i = 1; i < n; ++i) {
      Vec hv(c.begin() + static_cast<std::ptrdiff_t>(m + (i - 1) * d),
             c.begin() + static_cast<std::ptrdiff_t>(m + i * d));
      AlgElement h(A, hv);
      if (h.is_zero()) continue;
      // column j -= h * (x_i e_1 - x_1 e_i)
      work(0, j) -= h * x[i];
      work(i, j) += h * x[0];
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (c[k].is_zero()) continue;
      if (s[j] < 0) s[j] = static_cast<long>(k);
      unit[j] += xpow[k - static_cast<std::size_t>(s[j])].scaled(c[k]);
    }
  }
  long best = -1;
  for (std::size_t j = 0; j < n; ++j)
    if (s[j] >= 0 && (best < 0 || s[j] < s[static_cast<std::size_t>(best)])) best = static_cast<long>(j);
  if (best < 0) throw InvariantViolation("first row vanishes modulo H for an x-nice matrix");
  const std::size_t b = static_cast<std::size_t>(best);
  if (b != 0) {
    for (std::size_t i = 0; i < n; ++i) std::swap(work(i, 0), work(i, b));
    std::swap(s[0], s[b]);
    std::swap(unit[0], unit[b]);
  }
  AlgElement uinv = unit[0].inverse();
  for (std::size_t i = 0; i < n; ++i) work(i, 0) = work(i, 0) * uinv;
  const std::size_t r = static_cast<std::size_t>(s[0]);
  for (std::size_t j = 1; j < n; ++j) {
    if (s[j] < 0) continue;
    AlgElement f = unit[j] * xpow[static_cast<std::size_t>(s[j]) - r];
    for (std::size_t i = 0; i < n; ++i) work(i, j) -= f * work(i, 0);
  }
  if (work(0, 0) != xpow[r]) throw InvariantViolation("pivot is not a pure power of x_1");
  for (std::size_t j = 1; j < n; ++j)
    if (!work(0, j).is_zero()) throw InvariantViolation("first row was not cleared");

  FirstRowNormalForm out{work, static_cast<unsigned>(r), first_row_exponent_formula(base.ideal)};
  if (out.r1 != out.r1_formula) throw InvariantViolation("r1 disagrees with the max-power formula");
  NiceCheck c = is_x_nice(work);
  if (!c.nice || c.ideal != base.ideal) throw InvariantViolation("normalized matrix left the equivalence class");
  AlgElement dstar = n > 1 ? det(work.minor_matrix(0, 0)) : A->one();
  if (colon(base.ideal, {dstar}) != ideal_sum(H, base.ideal))
    throw InvariantViolation("J : det(phi*) differs from H + J");
  return out;
}

AlgElement random_element(const AlgebraPtr& alg, std::mt19937_64& rng, bool in_maximal, long range) {
  Vec v = zero_vec(alg->field(), alg->dim());
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    if (in_maximal && i == alg->one_index()) continue;
    if (rng() % 2) v[i] = Scalar::random(alg->field(), rng, range);
  }
  return AlgElement(alg, std::move(v));
}

AlgMatrix random_matrix(const AlgebraPtr& alg, std::size_t n, std::mt19937_64& rng, long range) {
  AlgMatrix m(alg, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_element(alg, rng, rng() % 2 == 0, range);
  return m;
}

}  // namespace ci0
