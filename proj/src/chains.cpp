#include "ci0/chains.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ci0/errors.hpp"

namespace ci0 {

std::size_t ChainReport::length() const {
  return static_cast<std::size_t>(std::count_if(links.begin(), links.end(), [](const ChainLink& l) { return l.strict; }));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

IdealSubspace span_of(const AlgebraPtr& A, const Row& gens) { return ideal_span(A, gens); }

// Minimal A-module generators among the K-basis `rows` of a submodule of A^n.
std::vector<Row> minimize_module(const AlgebraPtr& A, std::size_t n, const std::vector<Vec>& rows) {
  Echelon msub(A->field(), n * A->dim());
  for (const auto& r : rows) {
    Row c = unflatten(A, r, n);
    for (std::size_t k = 0; k < A->nvars(); ++k) {
      Row xc;
      for (const auto& a : c) xc.emplace_back(A, A->mul_var(k, a.coords()));
      msub.insert(flatten(xc));
    }
  }
  std::vector<Row> out;
  for (const auto& r : rows)
    if (msub.insert(r)) out.push_back(unflatten(A, r, n));
  return out;
}

// a with a * y = target, if any.
std::optional<AlgElement> divide(const AlgElement& target, const AlgElement& y) {
  const auto& A = y.algebra();
  std::vector<Vec> cols;
  for (std::size_t t = 0; t < A->dim(); ++t) cols.push_back(A->mul_basis(t, y.coords()));
  Vec rhs = target.coords();
  auto sol = solve_columns(A->field(), cols, A->dim(), &rhs);
  if (!sol.particular) return std::nullopt;
  AlgElement a(A, *sol.particular);
  require(a * y == target, "division check failed");
  return a;
}

void fill_link(ChainLink& l, const IdealSubspace& lower, const IdealSubspace& I, const AlgElement& w) {
  l.witness = w;
  l.strict = lower != I;
  l.factor_unit = w.is_unit();
  l.gorenstein = is_gorenstein_quotient(I);
  l.quotient_exponent = quotient_exponent(I);
}

}  // namespace

void require_ci0_algebra(const AlgebraPtr& alg) {
  if (!ci0_test(zero_ideal(alg)).is_ci0) throw PreconditionError("the algebra is not a complete intersection");
}

bool is_minimal_generator(const AlgElement& y) {
  return !y.is_unit() && !maximal_ideal_power(y.algebra(), 2).contains(y);
}

// ---------------------------------------------------------------------------

ChainReport chain_from_matrix_factorization(const std::vector<AlgMatrix>& factors) {
  if (factors.empty()) throw PreconditionError("no factors");
  const auto& A = factors[0].algebra();
  const std::size_t n = A->nvars(), t = factors.size();
  for (const auto& f : factors)
    if (f.rows() != n || f.cols() != n) throw PreconditionError("factors must be square of size " + std::to_string(n));
  AlgMatrix psi = factors[0];
  for (std::size_t k = 1; k < t; ++k) psi = psi * factors[k];
  if (!is_wiebe(psi)) throw PreconditionError("the product is not an x-Wiebe matrix");

  ChainReport r;
  r.matrix_factors = factors;
  Row x = A->variables();
  std::vector<AlgMatrix> prefix(t + 1);  // prefix[i] = eta_t ... eta_{i+1}
  prefix[t] = AlgMatrix::identity(A, n);
  for (std::size_t i = t; i-- > 0;) prefix[i] = prefix[i + 1] * factors[t - i - 1];
  AlgMatrix suffix = AlgMatrix::identity(A, n);  // eta_i ... eta_1
  for (std::size_t i = 0; i <= t; ++i) {
    if (i > 0) suffix = factors[t - i] * suffix;
    IdealSubspace I = span_of(A, row_times(x, prefix[i]));
    require(I == annihilator(det(suffix)), "I_i differs from 0 : det(eta_i ... eta_1)");
    r.ideals.push_back(std::move(I));
  }
  require(r.ideals.front().is_zero() && r.ideals.back() == maximal_ideal(A), "chain endpoints are not 0 and M");
  for (std::size_t i = 1; i <= t; ++i) {
    const auto& lo = r.ideals[i - 1];
    const auto& I = r.ideals[i];
    AlgElement d = det(factors[t - i]);
    require(colon(lo, I) == ideal_sum(lo, principal_ideal(d)), "I_{i-1} : I_i != I_{i-1} + det A");
    require(colon(lo, {d}) == I, "I_{i-1} : det != I_i");
    ChainLink l;
    fill_link(l, lo, I, d);
    require(l.strict == !l.factor_unit, "strictness does not match the factor");
    NiceCheck c = is_x_nice(prefix[i]);
    l.ci0 = c.nice && c.ideal == I;
    require(l.ci0, "chain ideal is not C.I.0");
    r.links.push_back(std::move(l));
  }
  return r;
}

ChainReport gorenstein_chain_from_socle_factorization(const std::vector<AlgElement>& factors) {
  if (factors.empty()) throw PreconditionError("no factors");
  const auto& A = factors[0].algebra();
  if (!is_gorenstein(A)) throw PreconditionError("the algebra is not Gorenstein");
  const std::size_t t = factors.size();
  AlgElement v = A->one();
  for (const auto& a : factors) v = v * a;
  if (v.is_zero() || principal_ideal(v) != socle(A)) throw PreconditionError("the product does not generate the socle");

  ChainReport r;
  r.element_factors = factors;
  AlgElement partial = A->one();  // a_i ... a_1
  for (std::size_t i = 0; i <= t; ++i) {
    if (i > 0) partial = factors[t - i] * partial;
    IdealSubspace I = annihilator(partial);
    require(colon(zero_ideal(A), I) == principal_ideal(partial), "0 : I_i != a_i ... a_1 A");
    r.ideals.push_back(std::move(I));
  }
  require(r.ideals.back() == maximal_ideal(A), "chain does not end at M");
  for (std::size_t i = 1; i <= t; ++i) {
    const auto& lo = r.ideals[i - 1];
    const auto& I = r.ideals[i];
    const AlgElement& a = factors[t - i];
    require(colon(lo, I) == ideal_sum(lo, principal_ideal(a)), "I_{i-1} : I_i != I_{i-1} + a_i A");
    ChainLink l;
    fill_link(l, lo, I, a);
    require(l.strict == !l.factor_unit, "strictness does not match the factor");
    require(l.gorenstein, "chain ideal is not Gorenstein");
    l.ci0 = ci0_test(I).is_ci0;
    r.links.push_back(std::move(l));
  }
  return r;
}

// ---------------------------------------------------------------------------

AlgMatrix refine_pair(const IdealSubspace& I0, const IdealSubspace& I1, const AlgMatrix& phi1, std::uint64_t seed,
                      std::size_t cap) {
  const auto& A = phi1.algebra();
  const std::size_t n = A->nvars(), d = A->dim();
  if (!I1.contains(I0)) throw PreconditionError("I0 is not contained in I1");
  NiceCheck c = is_x_nice(phi1);
  if (!c.nice || c.ideal != I1) throw PreconditionError("phi1 does not belong to I1");
  if (I0 == I1) return AlgMatrix::identity(A, n);
  if (!ci0_test(I0, seed, cap).is_ci0) throw PreconditionError("I0 is not a C.I.0 ideal");

  Row g = row_times(A->variables(), phi1);
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t t = 0; t < d; ++t) cols.push_back(I0.echelon().reduce(A->mul_basis(t, g[j].coords())));
  auto kernel = kernel_of_columns(A->field(), cols, d);
  Echelon k(A->field(), n * d);
  for (auto& v : kernel) k.insert(std::move(v));
  auto gens = minimize_module(A, n, k.rows());

  std::optional<AlgMatrix> found;
  std::size_t examined = enumerate_subsets(gens.size(), n, seed, cap, [&](const std::vector<std::size_t>& pick) {
    std::vector<Row> cs;
    for (auto j : pick) cs.push_back(gens[j]);
    AlgMatrix gamma = AlgMatrix::from_columns(A, n, cs);
    AlgMatrix phi0 = phi1 * gamma;
    if (I0.contains(det(phi0))) return false;
    NiceCheck c0 = is_x_nice(phi0);
    if (!c0.nice || c0.ideal != I0) return false;
    found = std::move(gamma);
    return true;
  });
  if (!found)
    throw InvariantViolation("refinement search exhausted: " + std::to_string(gens.size()) + " generators, " +
                             std::to_string(examined) + " minors");
  return *found;
}

// ---------------------------------------------------------------------------

MinGenProfile min_generator_profile(const AlgElement& y) {
  const auto& A = y.algebra();
  const std::size_t n = A->nvars();
  if (!is_minimal_generator(y)) throw PreconditionError("y is not a minimal generator of M");
  require_ci0_algebra(A);

  MinGenProfile p;
  p.y = y;
  IdealSubspace ann = annihilator(y);
  Ci0Verdict annv = ci0_test(ann);
  p.ann_is_ci0 = annv.is_ci0;
  p.ann_is_principal = is_principal(ann);
  if (p.ann_is_principal) p.z = minimal_generators(ann).front();
  p.yA_is_ci0 = ci0_test(principal_ideal(y)).is_ci0;

  // Exhaustive search over generator choices: first column y * c with
  // c a syzygy of y*x, remaining columns syzygies of x.
  Row x = A->variables();
  Row yx;
  for (const auto& v : x) yx.push_back(y * v);
  auto s1 = syzygies(yx, true).columns;
  auto s2 = syzygies(x, true).columns;
  for (const auto& c : s1) {
    if (p.block_wiebe_found) break;
    enumerate_subsets(s2.size(), n - 1, 0, kDefaultMinorCap, [&](const std::vector<std::size_t>& pick) {
      std::vector<Row> cols = {c};
      for (auto j : pick) cols.push_back(s2[j]);
      AlgMatrix phi1 = AlgMatrix::from_columns(A, n, cols);
      Row diag(n, A->one());
      diag[0] = y;
      AlgMatrix psi = phi1 * AlgMatrix::diagonal(diag);
      if (det(psi).is_zero()) return false;
      require(is_wiebe(psi), "block candidate is not Wiebe");
      p.block_wiebe_found = true;
      p.phi1 = std::move(phi1);
      p.psi = std::move(psi);
      return true;
    });
  }

  if (p.ann_is_ci0) {
    const AlgMatrix& phi = *annv.certificate;
    AlgMatrix gamma = refine_pair(zero_ideal(A), ann, phi);
    AlgElement dg = det(gamma);
    require(principal_ideal(dg) == principal_ideal(y), "det(gamma) A != yA");
    Diagonalization dz = diagonalize_unit_pivot(gamma);
    auto u = divide(dz.d, y);
    require(u && u->is_unit(), "diagonal entry is not a unit multiple of y");
    Row du(n, A->one()), dy(n, A->one());
    du[0] = *u;
    dy[0] = y;
    AlgMatrix phi1 = phi * inverse(dz.theta1) * AlgMatrix::diagonal(du);
    AlgMatrix psi = phi1 * AlgMatrix::diagonal(dy);
    require(is_wiebe(psi), "refined block matrix is not Wiebe");
    NiceCheck c = is_x_nice(phi1);
    require(c.nice && c.ideal == ann, "phi1 does not belong to 0 : yA");
    p.phi1 = std::move(phi1);
    p.psi = std::move(psi);
    p.via_refinement = true;
  }
  if (!p.all_true() && !p.all_false())
    throw InvariantViolation("minimal generator conditions disagree for y = " + y.to_string());
  return p;
}

ZeroDivisorPairReport zero_divisor_pair_check(const AlgElement& y, const AlgElement& z) {
  const auto& A = y.algebra();
  if (!is_minimal_generator(y) || !is_minimal_generator(z)) throw PreconditionError("y and z must lie in M \\ M^2");
  if (!(y * z).is_zero()) throw PreconditionError("yz != 0");
  require_ci0_algebra(A);
  ZeroDivisorPairReport r;
  IdealSubspace yA = principal_ideal(y), zA = principal_ideal(z);
  r.ann_y_is_zA = annihilator(y) == zA;
  r.ann_z_is_yA = annihilator(z) == yA;
  r.yA_ci0 = ci0_test(yA).is_ci0;
  r.zA_ci0 = ci0_test(zA).is_ci0;
  if (A->graded() && y.lift().is_homogeneous() && z.lift().is_homogeneous()) {
    unsigned e = A->exponent();
    r.exponent_drop = quotient_exponent(yA) + 1 == e && quotient_exponent(zA) + 1 == e;
  }
  return r;
}

// ---------------------------------------------------------------------------

ChainReport triangular_chain(const Row& z, const AlgMatrix& psi) {
  if (z.empty()) throw PreconditionError("empty sequence");
  const auto& A = z[0].algebra();
  const std::size_t t = z.size();
  if (psi.rows() != t || psi.cols() != t) throw PreconditionError("matrix size differs from the sequence length");
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (!psi(i, j).is_zero()) throw PreconditionError("matrix is not upper triangular");
    if (psi(i, i).is_unit()) throw PreconditionError("diagonal entry " + std::to_string(i + 1) + " is a unit");
  }
  for (const auto& v : row_times(z, psi))
    if (!v.is_zero()) throw PreconditionError("z * psi != 0");
  if (det(psi).is_zero()) throw PreconditionError("det(psi) = 0");
  if (span_of(A, z) != maximal_ideal(A)) throw PreconditionError("z does not generate M");

  ChainReport r;
  r.matrix_factors = {psi};
  r.ideals.push_back(zero_ideal(A));
  for (std::size_t i = 0; i < t; ++i) r.ideals.push_back(span_of(A, Row(z.begin(), z.begin() + static_cast<long>(i) + 1)));
  for (std::size_t i = 1; i <= t; ++i) {
    const auto& lo = r.ideals[i - 1];
    const auto& I = r.ideals[i];
    const AlgElement& d = psi(i - 1, i - 1);
    require(colon(lo, I) == ideal_sum(lo, principal_ideal(d)), "I_{i-1} : I_i != I_{i-1} + d_i A");
    ChainLink l;
    fill_link(l, lo, I, d);
    require(l.strict, "triangular chain is not strict");
    l.ci0 = ci0_test(I).is_ci0;
    require(l.ci0, "triangular chain ideal is not C.I.0");
    r.links.push_back(std::move(l));
  }
  return r;
}

std::optional<AlgMatrix> triangular_from_chain(const Row& z) {
  if (z.empty()) throw PreconditionError("empty sequence");
  const auto& A = z[0].algebra();
  const std::size_t t = z.size(), dim = A->dim();
  AlgMatrix psi(A, t, t);
  IdealSubspace lo = zero_ideal(A);
  for (std::size_t i = 0; i < t; ++i) {
    IdealSubspace C = colon(lo, {z[i]});
    std::optional<AlgElement> d;
    for (const auto& g : minimal_generators(C))
      if (ideal_sum(lo, principal_ideal(g)) == C && !g.is_unit()) {
        d = g;
        break;
      }
    if (!d) return std::nullopt;
    AlgElement target = -(*d * z[i]);
    Row col(t, A->zero());
    col[i] = *d;
    if (!target.is_zero()) {
      std::vector<Vec> cols;
      for (std::size_t k = 0; k < i; ++k)
        for (std::size_t b = 0; b < dim; ++b) cols.push_back(A->mul_basis(b, z[k].coords()));
      if (cols.empty()) return std::nullopt;
      Vec rhs = target.coords();
      auto sol = solve_columns(A->field(), cols, dim, &rhs);
      if (!sol.particular) return std::nullopt;
      for (std::size_t k = 0; k < i; ++k)
        col[k] = AlgElement(A, Vec(sol.particular->begin() + static_cast<long>(k * dim),
                                   sol.particular->begin() + static_cast<long>((k + 1) * dim)));
    }
    psi.set_column(i, col);
    lo = ideal_sum(lo, principal_ideal(z[i]));
  }
  for (const auto& v : row_times(z, psi)) require(v.is_zero(), "reconstructed matrix does not kill z");
  if (det(psi).is_zero()) return std::nullopt;
  return psi;
}

// ---------------------------------------------------------------------------

namespace {

Row complete_sequence(const Row& prefix) {
  const auto& A = prefix.at(0).algebra();
  IdealSubspace M2 = maximal_ideal_power(A, 2);
  Echelon cls = M2.echelon();
  Row out;
  for (const auto& y : prefix) {
    if (y.is_unit() || !cls.insert(y.coords())) throw PreconditionError("sequence is not part of a minimal generating set");
    out.push_back(y);
  }
  for (const auto& x : A->variables())
    if (cls.insert(x.coords())) out.push_back(x);
  return out;
}

bool c5t_holds(const Row& seq, const IdealSubspace& ann) {
  Row rest(seq.begin() + 1, seq.end());
  return !span_of(seq[0].algebra(), rest).contains(ann);
}

}  // namespace

Row complete_to_minimal_sequence(const AlgElement& y) { return complete_sequence({y}); }

MinimalExponentReport minimal_exponent_checks(const AlgebraPtr& alg, const std::vector<AlgElement>& extra) {
  require_ci0_algebra(alg);
  MinimalExponentReport r;
  r.exponent = alg->exponent();
  r.embedding_dimension = alg->embedding_dimension();
  r.minimal_exponent = r.exponent == r.embedding_dimension + 1;
  IdealSubspace M2 = maximal_ideal_power(alg, 2);
  std::vector<AlgElement> ys;
  for (const auto& x : alg->variables())
    if (is_minimal_generator(x)) ys.push_back(x);
  for (const auto& e : extra) {
    if (!is_minimal_generator(e)) throw PreconditionError("extra element is not a minimal generator: " + e.to_string());
    ys.push_back(e);
  }
  for (const auto& y : ys) {
    GeneratorCheck g;
    g.y = y;
    g.sequence = complete_to_minimal_sequence(y);
    IdealSubspace ann = annihilator(y);
    g.c5t = c5t_holds(g.sequence, ann);
    g.pimi = !M2.contains(ann);
    if (g.pimi)
      for (const auto& b : ann.basis())
        if (!M2.contains(b)) {
          g.z = b;
          break;
        }
    Row rest(g.sequence.begin() + 1, g.sequence.end());
    g.square_in_rest = span_of(alg, rest).contains(y * y);
    g.yA_ci0 = ci0_test(principal_ideal(y)).is_ci0;
    g.bof = g.c5t;
    if (!g.bof && g.z) {
      AlgElement yz = y + *g.z;
      Echelon cls = M2.echelon();
      cls.insert(y.coords());
      if (!cls.contains(yz.coords())) g.bof = c5t_holds(complete_sequence({y, yz}), ann);
    }
    if (g.c5t) require(g.yA_ci0, "c5t holds but yA is not C.I.0 for y = " + y.to_string());
    if (r.minimal_exponent) {
      require(g.pimi == g.yA_ci0, "pimi criterion disagrees with the C.I.0 test for y = " + y.to_string());
      require(g.bof == g.yA_ci0, "bof criterion disagrees with the C.I.0 test for y = " + y.to_string());
      if (g.z) require(ann == principal_ideal(*g.z), "0 : yA != zA");
      if (r.embedding_dimension >= 2) require(g.square_in_rest, "y^2 is not in (x_2, ..., x_n)");
    }
    r.checks.push_back(std::move(g));
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(DecompositionStatus s) {
  switch (s) {
    case DecompositionStatus::Decomposed: return "decomposed";
    case DecompositionStatus::IndecomposableCertified: return "indecomposable_certified";
    case DecompositionStatus::Inconclusive: break;
  }
  return "inconclusive";
}

std::vector<Scalar> polynomial_roots(const std::vector<Scalar>& coefficients) {
  std::vector<Scalar> c = coefficients;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() < 2) return {};
  Field f = c[0].field();
  auto eval = [&](const Scalar& t) {
    Scalar acc = Scalar::zero(f);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
    return acc;
  };
  std::vector<Scalar> roots;
  if (f.is_finite()) {
    for (std::uint64_t r = 0; r < f.characteristic(); ++r) {
      Scalar t = Scalar::from_int(f, static_cast<long>(r));
      if (eval(t).is_zero()) roots.push_back(t);
    }
    return roots;
  }
  // Clear denominators, then candidates p/q with p | a_0, q | a_m.
  mpz_class l = 1;
  for (const auto& s : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& s : c) z.push_back(mpz_class(s.rational() * l));
  std::size_t shift = 0;
  while (z[shift] == 0) ++shift;
  if (shift > 0) roots.push_back(Scalar::zero(f));
  auto divisors = [](mpz_class v) {
    v = abs(v);
    std::vector<mpz_class> ds;
    for (mpz_class d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        if (d * d != v) ds.push_back(v / d);
      }
    return ds;
  };
  std::set<std::string> seen;
  for (const auto& p : divisors(z[shift]))
    for (const auto& q : divisors(z.back()))
      for (int sgn : {1, -1}) {
        Scalar t = Scalar::from_fraction(f, p * sgn, q);
        if (eval(t).is_zero() && seen.insert(t.to_string()).second) roots.push_back(t);
      }
  return roots;
}

namespace {

// Projective enumeration of nonzero vectors in GF(p)^m with first nonzero
// coordinate 1. Returns false when more than `limit` vectors would be needed.
bool for_each_projective(Field f, std::size_t m, std::size_t limit, const std::function<bool(const Vec&)>& visit,
                         std::size_t& count) {
  const std::uint64_t p = f.characteristic();
  double total = 0;
  for (std::size_t lead = 0; lead < m; ++lead) total += std::pow(static_cast<double>(p), static_cast<double>(m - lead - 1));
  if (total > static_cast<double>(limit)) return false;
  for (std::size_t lead = 0; lead < m; ++lead) {
    std::vector<std::uint64_t> digits(m - lead - 1, 0);
    for (;;) {
      Vec v = zero_vec(f, m);
      v[lead] = Scalar::one(f);
      for (std::size_t k = 0; k < digits.size(); ++k) v[lead + 1 + k] = Scalar::from_int(f, static_cast<long>(digits[k]));
      ++count;
      if (visit(v)) return true;
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  }
  return true;
}

std::vector<std::size_t> degree_indices(const AlgebraPtr& A, long deg) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < A->dim(); ++i)
    if (static_cast<long>(A->basis()[i].degree()) == deg) out.push_back(i);
  return out;
}

std::vector<std::size_t> maximal_indices(const AlgebraPtr& A) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < A->dim(); ++i)
    if (i != A->one_index()) out.push_back(i);
  return out;
}

AlgElement from_support(const AlgebraPtr& A, const std::vector<std::size_t>& idx, const Vec& coeffs) {
  Vec v = zero_vec(A->field(), A->dim());
  for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = coeffs[k];
  return AlgElement(A, std::move(v));
}

// w supported on `idx` with u * w = v.
std::optional<AlgElement> solve_factor(const AlgElement& u, const AlgElement& v, const std::vector<std::size_t>& idx) {
  const auto& A = u.algebra();
  std::vector<Vec> cols;
  for (auto i : idx) cols.push_back(A->mul_basis(i, u.coords()));
  Vec rhs = v.coords();
  auto sol = solve_columns(A->field(), cols, A->dim(), &rhs);
  if (!sol.particular) return std::nullopt;
  AlgElement w = from_support(A, idx, *sol.particular);
  require(u * w == v, "factor check failed");
  return w;
}

RingPtr parameter_ring(Field f, const std::vector<std::string>& names) { return make_ring(f, names); }

std::vector<std::string> equations_to_strings(const std::vector<Polynomial>& eqs) {
  std::vector<std::string> out;
  for (const auto& e : eqs)
    if (!e.is_zero()) out.push_back(e.to_string() + " = 0");
  return out;
}

// Degree-one constraint system for v = u * w with u, w linear forms.
std::vector<std::string> element_constraints(const AlgElement& v) {
  const auto& A = v.algebra();
  auto lin = degree_indices(A, 1);
  auto quad = degree_indices(A, 2);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < lin.size(); ++k) names.push_back("u" + std::to_string(k + 1));
  for (std::size_t k = 0; k < lin.size(); ++k) names.push_back("w" + std::to_string(k + 1));
  RingPtr P = parameter_ring(A->field(), names);
  std::vector<Polynomial> eqs;
  for (auto e : quad) {
    Polynomial eq = Polynomial::constant(P, -v.coords()[e]);
    for (std::size_t a = 0; a < lin.size(); ++a)
      for (std::size_t b = 0; b < lin.size(); ++b) {
        Vec prod = A->mul_basis(lin[a], A->basis_element(lin[b]).coords());
        if (prod[e].is_zero()) continue;
        eq += (Polynomial::variable(P, a) * Polynomial::variable(P, lin.size() + b)).scaled(prod[e]);
      }
    eqs.push_back(std::move(eq));
  }
  return equations_to_strings(eqs);
}

DecompositionResult decompose_element(const AlgElement& v, SearchMode mode, std::uint64_t seed, std::size_t budget) {
  const auto& A = v.algebra();
  DecompositionResult r;
  if (!maximal_ideal_power(A, 2).contains(v)) {
    r.status = DecompositionStatus::IndecomposableCertified;
    r.search_space = "element lies in M \\ M^2";
    return r;
  }
  const Field f = A->field();
  Polynomial lv = v.lift();
  if (A->graded() && lv.is_homogeneous()) {
    const long t = lv.degree();
    bool complete = true;
    r.search_space = "homogeneous degree splits (i, " + std::to_string(t) + " - i)";
    for (long i = 1; 2 * i <= t && !r.element_witness; ++i) {
      auto ui = degree_indices(A, i), wi = degree_indices(A, t - i);
      auto attempt = [&](const Vec& c) {
        AlgElement u = from_support(A, ui, c);
        if (u.is_zero()) return false;
        if (auto w = solve_factor(u, v, wi)) {
          r.element_witness = std::make_pair(u, *w);
          return true;
        }
        return false;
      };
      if (f.is_finite() && mode == SearchMode::Exhaustive) {
        if (!for_each_projective(f, ui.size(), budget, attempt, r.candidates)) complete = false;
        else continue;
      } else {
        complete = false;
      }
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
      for (std::size_t b = 0; b < budget && !r.element_witness; ++b) {
        Vec c = zero_vec(f, ui.size());
        for (auto& s : c) s = Scalar::random(f, rng, 3);
        ++r.candidates;
        attempt(c);
      }
    }
    if (r.element_witness) {
      r.status = DecompositionStatus::Decomposed;
    } else if (complete && t == 2 && f.is_finite()) {
      r.status = DecompositionStatus::IndecomposableCertified;
    }
    if (t == 2 && !f.is_finite()) r.constraints = element_constraints(v);
    return r;
  }
  r.search_space = "random u in M, linear solve for w in M";
  auto idx = maximal_indices(A);
  std::mt19937_64 rng(seed);
  for (std::size_t b = 0; b < budget; ++b) {
    AlgElement u = random_element(A, rng, true);
    if (u.is_zero()) continue;
    ++r.candidates;
    if (auto w = solve_factor(u, v, idx)) {
      r.element_witness = std::make_pair(u, *w);
      r.status = DecompositionStatus::Decomposed;
      break;
    }
  }
  return r;
}

// psi = beta * gamma with gamma the identity except column j = (c, d at j).
std::optional<std::pair<AlgMatrix, AlgMatrix>> solve_pattern(const AlgMatrix& psi, std::size_t j, const AlgElement& d) {
  const auto& A = psi.algebra();
  const std::size_t n = psi.rows(), dim = A->dim();
  // Unknowns: c_k (k != j) in A, then b in A^n.
  std::vector<Vec> cols;
  const std::size_t rows = n * dim + 1;
  auto pad = [&](Vec v) {
    v.push_back(Scalar::zero(A->field()));
    return v;
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (k == j) continue;
    Row pc = psi.column(k);
    for (std::size_t t = 0; t < dim; ++t) {
      Row v;
      for (const auto& a : pc) v.emplace_back(A, A->mul_basis(t, a.coords()));
      cols.push_back(pad(flatten(v)));
    }
  }
  // Constant part of det(beta) is linear in the constant part of b.
  AlgMatrix c0(A, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) c0(i, k) = A->scalar(psi(i, k).coords()[A->one_index()]);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar cof = Scalar::zero(A->field());
    if (n == 1) {
      cof = Scalar::one(A->field());
    } else {
      cof = det(c0.minor_matrix(i, j)).coords()[A->one_index()];
      if ((i + j) % 2) cof = -cof;
    }
    for (std::size_t t = 0; t < dim; ++t) {
      Row v(n, A->zero());
      v[i] = AlgElement(A, A->mul_basis(t, d.coords()));
      Vec col = flatten(v);
      col.push_back(t == A->one_index() ? cof : Scalar::zero(A->field()));
      cols.push_back(std::move(col));
    }
  }
  Vec rhs = pad(flatten(psi.column(j)));
  auto sol = solve_columns(A->field(), cols, rows, &rhs);
  if (!sol.particular) return std::nullopt;
  const Vec& s = *sol.particular;
  AlgMatrix gamma = AlgMatrix::identity(A, n), beta = psi;
  std::size_t off = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == j) continue;
    gamma(k, j) = AlgElement(A, Vec(s.begin() + static_cast<long>(off), s.begin() + static_cast<long>(off + dim)));
    off += dim;
  }
  gamma(j, j) = d;
  for (std::size_t i = 0; i < n; ++i) {
    beta(i, j) = AlgElement(A, Vec(s.begin() + static_cast<long>(off), s.begin() + static_cast<long>(off + dim)));
    off += dim;
  }
  require(beta * gamma == psi, "pattern witness does not reassemble");
  require(!det(beta).is_unit() && !det(gamma).is_unit(), "pattern witness has an invertible factor");
  return std::make_pair(beta, gamma);
}

Scalar linear_coefficient(const AlgElement& a, std::size_t var) {
  const auto& A = a.algebra();
  return a.lift().coefficient(Monomial::variable(A->nvars(), var));
}

bool entries_linear(const AlgMatrix& psi) {
  const auto& A = psi.algebra();
  if (!A->graded()) return false;
  for (std::size_t i = 0; i < psi.rows(); ++i)
    for (std::size_t k = 0; k < psi.cols(); ++k) {
      Polynomial p = psi(i, k).lift();
      if (!p.is_zero() && (p.degree() != 1 || !p.is_homogeneous())) return false;
    }
  return true;
}

std::string univariate_string(const std::vector<Scalar>& c, const std::string& var, Field f) {
  RingPtr P = make_ring(f, {var});
  Polynomial p(P);
  for (std::size_t k = 0; k < c.size(); ++k) p += Polynomial::variable(P, 0).pow(static_cast<unsigned>(k)).scaled(c[k]);
  return p.to_string();
}

// Degree-one constraints for the column-j pattern of a 2x2 matrix of linear forms.
void matrix_constraints(const AlgMatrix& psi, DecompositionResult& r) {
  const auto& A = psi.algebra();
  const std::size_t n = psi.rows(), nv = A->nvars();
  const Field f = A->field();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) names.push_back("c" + std::to_string(k + 1));
    for (std::size_t i = 0; i < n; ++i) names.push_back("b" + std::to_string(i + 1));
    for (std::size_t v = 0; v < nv; ++v) names.push_back("d_" + A->vars()[v]);
    RingPtr P = make_ring(f, names);
    std::vector<Polynomial> eqs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t v = 0; v < nv; ++v) {
        Polynomial eq = Polynomial::constant(P, -linear_coefficient(psi(i, j), v));
        std::size_t ci = 0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == j) continue;
          eq += Polynomial::variable(P, ci++).scaled(linear_coefficient(psi(i, k), v));
        }
        eq += Polynomial::variable(P, (n - 1) + i) * Polynomial::variable(P, (n - 1) + n + v);
        eqs.push_back(std::move(eq));
      }
    for (auto& s : equations_to_strings(eqs)) r.constraints.push_back("[column " + std::to_string(j + 1) + "] " + s);
  }
  if (n != 2 || nv != 2) return;
  for (std::size_t j = 0; j < 2; ++j) {
    const std::size_t k = 1 - j;
    // Rows psi_{i,j} - c psi_{i,k} must be proportional: det W(c) = 0.
    Scalar al[2][2], be[2][2];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t v = 0; v < 2; ++v) {
        al[i][v] = linear_coefficient(psi(i, j), v);
        be[i][v] = -linear_coefficient(psi(i, k), v);
      }
    Scalar c0 = al[0][0] * al[1][1] - al[0][1] * al[1][0];
    Scalar c1 = al[0][0] * be[1][1] + be[0][0] * al[1][1] - al[0][1] * be[1][0] - be[0][1] * al[1][0];
    Scalar c2 = be[0][0] * be[1][1] - be[0][1] * be[1][0];
    UnivariateConstraint u;
    if (j == 1) {
      u.pattern = "psi = beta * [[1, c], [0, d]], u = -c";
      u.variable = "u";
      u.coefficients = {c0, -c1, c2};
    } else {
      u.pattern = "psi = beta * [[e, 0], [f, 1]]";
      u.variable = "f";
      u.coefficients = {c0, c1, c2};
    }
    u.polynomial = univariate_string(u.coefficients, u.variable, f);
    u.roots = polynomial_roots(u.coefficients);
    r.univariate.push_back(std::move(u));
  }
}

DecompositionResult decompose_matrix(const AlgMatrix& psi, SearchMode mode, std::uint64_t seed, std::size_t budget) {
  const auto& A = psi.algebra();
  const std::size_t n = psi.rows();
  const Field f = A->field();
  AlgElement dpsi = det(psi);
  DecompositionResult r;
  IdealSubspace M2 = maximal_ideal_power(A, 2), M3 = maximal_ideal_power(A, 3);
  if (!M2.contains(dpsi)) {
    r.status = DecompositionStatus::IndecomposableCertified;
    r.search_space = "determinant lies in M \\ M^2";
    return r;
  }
  r.search_space = "gamma = identity with column j replaced by (c, d), d in M projective, linear solve for beta";
  auto idx = maximal_indices(A);
  bool complete = true;
  auto try_d = [&](const AlgElement& d) {
    for (std::size_t j = 0; j < n; ++j)
      if (auto w = solve_pattern(psi, j, d)) {
        r.matrix_witness = std::move(w);
        return true;
      }
    return false;
  };
  // Entries and monomials first; they catch the obvious splittings.
  std::vector<AlgElement> seeds;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!psi(i, k).is_zero() && !psi(i, k).is_unit()) seeds.push_back(psi(i, k));
  for (auto i : idx) seeds.push_back(A->basis_element(i));
  for (const auto& d : seeds) {
    ++r.candidates;
    if (try_d(d)) break;
  }
  if (!r.matrix_witness) {
    if (f.is_finite() && mode == SearchMode::Exhaustive) {
      complete = for_each_projective(
          f, idx.size(), budget, [&](const Vec& c) { return try_d(from_support(A, idx, c)); }, r.candidates);
      if (dpsi.is_zero() && !r.matrix_witness) try_d(A->zero());
    } else {
      complete = false;
    }
    if (!complete) {
      std::mt19937_64 rng(seed);
      for (std::size_t b = 0; b < budget && !r.matrix_witness; ++b) {
        AlgElement d = random_element(A, rng, true);
        if (d.is_zero()) continue;
        ++r.candidates;
        try_d(d);
      }
    }
  }
  if (entries_linear(psi)) matrix_constraints(psi, r);
  if (r.matrix_witness) {
    r.status = DecompositionStatus::Decomposed;
  } else if (complete && f.is_finite() && !dpsi.is_zero() && !M3.contains(dpsi)) {
    r.status = DecompositionStatus::IndecomposableCertified;
  }
  return r;
}

}  // namespace

DecompositionResult decompose_search(const AlgElement& v, SearchMode mode, std::uint64_t seed, std::size_t budget) {
  if (v.is_zero() || v.is_unit()) throw PreconditionError("target must be nonzero and non-invertible");
  return decompose_element(v, mode, seed, budget);
}

DecompositionResult decompose_search(const AlgMatrix& psi, SearchMode mode, std::uint64_t seed, std::size_t budget) {
  if (!psi.is_square()) throw PreconditionError("square matrix required");
  if (psi.is_zero()) throw PreconditionError("target must be nonzero");
  if (det(psi).is_unit()) throw PreconditionError("target is invertible");
  return decompose_matrix(psi, mode, seed, budget);
}

// ---------------------------------------------------------------------------

namespace {

struct ProbeState {
  AlgebraPtr A;
  std::mt19937_64 rng;
  std::size_t budget;
  std::size_t explored = 0;
  bool exhausted = false;
  std::size_t target = 0;
  std::vector<IdealSubspace> best;
  std::set<std::vector<std::size_t>> dead;  // pivot sets of ideals with no better continuation
};

Row candidate_generators(const AlgebraPtr& B, std::mt19937_64& rng) {
  Row out;
  IdealSubspace M2 = maximal_ideal_power(B, 2);
  Row x = B->variables();
  for (const auto& v : x)
    if (!M2.contains(v)) out.push_back(v);
  for (std::size_t k = 0; k < x.size() + 2; ++k) {
    AlgElement y = B->zero();
    for (const auto& v : x) y += v.scaled(Scalar::random(B->field(), rng, 2));
    if (!y.is_zero() && !M2.contains(y)) out.push_back(y);
  }
  return out;
}

void probe(ProbeState& s, std::vector<IdealSubspace>& chain) {
  const IdealSubspace& I = chain.back();
  if (I.is_unit() || I == maximal_ideal(s.A)) {
    if (chain.size() > s.best.size()) s.best = chain;
    return;
  }
  if (s.best.size() >= s.target || s.exhausted) return;
  Quotient q = quotient_algebra(I);
  const auto& B = q.target();
  struct Next {
    IdealSubspace J;
    unsigned drop;
  };
  std::vector<Next> next;
  const unsigned e = quotient_exponent(I);
  for (const auto& y : candidate_generators(B, s.rng)) {
    if (++s.explored > s.budget) {
      s.exhausted = true;
      break;
    }
    IdealSubspace ann = annihilator(y);
    if (!is_principal(ann)) continue;
    IdealSubspace J = q.preimage(ann);
    if (J == I || s.dead.count(J.echelon().pivots())) continue;
    if (std::any_of(next.begin(), next.end(), [&](const Next& o) { return o.J == J; })) continue;
    next.push_back({J, e - quotient_exponent(J)});
  }
  std::stable_sort(next.begin(), next.end(), [](const Next& a, const Next& b) { return a.drop < b.drop; });
  for (auto& nx : next) {
    chain.push_back(nx.J);
    std::size_t before = s.best.size();
    probe(s, chain);
    chain.pop_back();
    if (s.best.size() >= s.target || s.exhausted) return;
    if (s.best.size() == before) s.dead.insert(nx.J.echelon().pivots());
  }
}

}  // namespace

MaxChainReport max_length_chain_probe(const AlgebraPtr& alg, std::uint64_t seed, std::size_t budget,
                                      const std::optional<IdealSubspace>& start) {
  require_ci0_algebra(alg);
  MaxChainReport r;
  r.upper_bound = alg->exponent() - 1;
  ProbeState s{alg, std::mt19937_64(seed), budget};
  std::vector<IdealSubspace> chain = {zero_ideal(alg)};
  if (start && !start->is_zero()) {
    if (start->is_unit()) throw PreconditionError("start ideal must be proper");
    if (!ci0_test(*start).is_ci0) throw PreconditionError("start ideal is not C.I.0");
    chain.push_back(*start);
    s.target = 2 + quotient_exponent(*start) - 1;
  } else {
    s.target = 1 + r.upper_bound;
  }
  probe(s, chain);
  r.best_chain = s.best;
  r.best_length = s.best.empty() ? 0 : s.best.size() - 1;
  r.explored = s.explored;
  r.budget_exhausted = s.exhausted;
  for (std::size_t i = 1; i < r.best_chain.size(); ++i)
    require(ci0_test(r.best_chain[i]).is_ci0, "probe produced a non C.I.0 ideal");

  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  for (const auto& y : candidate_generators(alg, rng))
    if (is_principal(annihilator(y)) && ci0_test(annihilator(y)).is_ci0) {
      r.bequi_witness = true;
      r.bequi_generator = y;
      break;
    }
  return r;
}

// ---------------------------------------------------------------------------

SplitRealization realize_split_generators(const AlgElement& y) {
  const auto& A = y.algebra();
  MinGenProfile p = min_generator_profile(y);
  if (!p.all_true()) throw PreconditionError("the minimal generator profile of y is not all-true");
  const AlgMatrix& phi1 = *p.phi1;
  const std::size_t n = A->nvars();
  const RingPtr& S = A->ring();
  SplitRealization r;
  r.y_lift = y.lift();
  std::vector<Polynomial> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(Polynomial::variable(S, i));
  r.lifted_matrix.assign(n, std::vector<Polynomial>(n, Polynomial(S)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.lifted_matrix[i][j] = phi1(i, j).lift();
  r.z_lift = Polynomial(S);
  for (std::size_t i = 0; i < n; ++i) r.z_lift += xs[i] * r.lifted_matrix[i][0];
  for (std::size_t i = 0; i < n; ++i) r.lifted_matrix[i][0] = r.lifted_matrix[i][0] * r.y_lift;
  r.generators.push_back(r.y_lift * r.z_lift);
  for (std::size_t j = 1; j < n; ++j) {
    Polynomial g(S);
    for (std::size_t i = 0; i < n; ++i) g += xs[i] * r.lifted_matrix[i][j];
    r.generators.push_back(std::move(g));
  }
  for (const auto& g : r.generators) require(A->ideal().contains(g), "lifted generator is not in Q");
  std::vector<Polynomial> truncated = r.generators;
  for (const Monomial& m : monomials_of_degree(n, A->exponent()))
    truncated.push_back(Polynomial::monomial(S, m, Scalar::one(A->field())));
  r.global = ideal_equal(buchberger(S, r.generators), A->ideal());
  r.regenerates = r.global || ideal_equal(buchberger(S, truncated), A->ideal());
  AlgElement z = A->element(r.z_lift);
  require(annihilator(y) == principal_ideal(z), "Q : (y') differs from (z') + Q");
  require(annihilator(z) == principal_ideal(y), "Q : (z') differs from (y') + Q");
  return r;
}

}  // namespace ci0
