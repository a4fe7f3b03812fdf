#include "ci0/artin.hpp"

#include <algorithm>
#include <deque>

#include "ci0/errors.hpp"

namespace ci0 {

AlgebraPtr ArtinAlgebra::build(Field field, const std::vector<std::string>& vars,
                               const std::vector<std::string>& relations, MonomialOrder order) {
  RingPtr ring = make_ring(field, vars, order);
  std::vector<Polynomial> rels;
  for (const auto& r : relations) rels.push_back(parse_polynomial(r, ring));
  return from_polynomials(ring, rels);
}

AlgebraPtr ArtinAlgebra::from_polynomials(const RingPtr& ring, const std::vector<Polynomial>& relations) {
  auto alg = std::make_shared<ArtinAlgebra>(ring, buchberger(ring, relations));
  alg->graded_ = true;
  for (const auto& r : relations)
    if (!r.is_homogeneous()) alg->graded_ = false;
  alg->compute_invariants();
  return alg;
}

ArtinAlgebra::ArtinAlgebra(const RingPtr& ring, GroebnerBasis gb) : ring_(ring), gb_(std::move(gb)) {
  if (gb_.is_unit_ideal()) throw NotLocal("relations generate the unit ideal");
  basis_ = standard_monomials(gb_);
  std::reverse(basis_.begin(), basis_.end());
  build_tables();
}

long ArtinAlgebra::index_of(const Monomial& m) const {
  const MonomialOrder ord = ring_->order();
  auto it = std::lower_bound(basis_.begin(), basis_.end(), m,
                             [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) > 0; });
  if (it != basis_.end() && *it == m) return it - basis_.begin();
  return -1;
}

Vec ArtinAlgebra::coords(const Polynomial& p) const {
  Vec v = zero_vec(field(), dim());
  Polynomial nf = gb_.normal_form(p);
  for (const auto& t : nf.terms()) {
    long i = index_of(t.mono);
    if (i < 0) throw InvariantViolation("normal form left a non-standard monomial");
    v[static_cast<std::size_t>(i)] = t.coef;
  }
  return v;
}

Polynomial ArtinAlgebra::lift(const Vec& v) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) terms.push_back({basis_[i], v[i]});
  return Polynomial::from_terms(ring_, std::move(terms));
}

void ArtinAlgebra::build_tables() {
  const std::size_t d = dim(), n = nvars();
  auto sparse = [](const Vec& v) {
    std::vector<std::pair<std::uint32_t, Scalar>> s;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) s.emplace_back(static_cast<std::uint32_t>(k), v[k]);
    return s;
  };
  // x_k * b_j for every variable, by normal form.
  std::vector<std::vector<Vec>> varmul(n, std::vector<Vec>(d));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < d; ++j)
      varmul[k][j] = coords(Polynomial::monomial(ring_, basis_[j] * Monomial::variable(n, k),
                                                 Scalar::one(field())));
  table_.assign(d * d, {});
  std::vector<std::vector<Vec>> dense(d);
  for (std::size_t i = d; i-- > 0;) {
    const Monomial& m = basis_[i];
    dense[i].resize(d);
    if (m.is_one()) {
      for (std::size_t j = 0; j < d; ++j) {
        dense[i][j] = zero_vec(field(), d);
        dense[i][j][j] = Scalar::one(field());
      }
    } else {
      std::size_t k = 0;
      while (m[k] == 0) ++k;
      long prev = index_of(m / Monomial::variable(n, k));
      if (prev < 0) throw InvariantViolation("standard monomials are not an order ideal");
      for (std::size_t j = 0; j < d; ++j) {
        Vec acc = zero_vec(field(), d);
        const Vec& src = dense[static_cast<std::size_t>(prev)][j];
        for (std::size_t t = 0; t < d; ++t)
          if (!src[t].is_zero()) axpy(acc, src[t], varmul[k][t]);
        dense[i][j] = std::move(acc);
      }
    }
    for (std::size_t j = 0; j < d; ++j) table_[i * d + j] = sparse(dense[i][j]);
  }
}

Vec ArtinAlgebra::mul_basis(std::size_t i, const Vec& v) const {
  const std::size_t d = dim();
  Vec out = zero_vec(field(), d);
  for (std::size_t j = 0; j < d; ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& [k, c] : table_[i * d + j]) out[k].add_mul(v[j], c);
  }
  return out;
}

Vec ArtinAlgebra::mul(const Vec& a, const Vec& b) const {
  const std::size_t d = dim();
  Vec out = zero_vec(field(), d);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      Scalar ab = a[i] * b[j];
      for (const auto& [k, c] : table_[i * d + j]) out[k].add_mul(ab, c);
    }
  }
  return out;
}

Vec ArtinAlgebra::mul_var(std::size_t i, const Vec& a) const {
  long idx = index_of(Monomial::variable(nvars(), i));
  if (idx < 0) {
    Vec v = coords(Polynomial::variable(ring_, i));
    return mul(v, a);
  }
  return mul_basis(static_cast<std::size_t>(idx), a);
}

void ArtinAlgebra::compute_invariants() {
  const std::size_t d = dim();
  for (std::size_t i = 0; i < nvars(); ++i) {
    Vec x = coords(Polynomial::variable(ring_, i));
    Vec p = x;
    for (std::size_t k = 0; k <= d && !is_zero_vec(p); ++k) p = mul(p, x);
    if (!is_zero_vec(p)) throw NotLocal("variable " + vars()[i] + " is not nilpotent");
  }
  auto self = shared_from_this();
  IdealSubspace m = maximal_ideal(self);
  unsigned e = 1;
  IdealSubspace power = m;
  while (!power.is_zero()) {
    power = m_times(power);
    ++e;
  }
  exponent_ = e;
  embdim_ = m.dim() - m_times(m).dim();
}

AlgElement ArtinAlgebra::zero() const { return AlgElement(shared_from_this(), zero_vec(field(), dim())); }

AlgElement ArtinAlgebra::one() const {
  Vec v = zero_vec(field(), dim());
  v[one_index()] = Scalar::one(field());
  return AlgElement(shared_from_this(), std::move(v));
}

AlgElement ArtinAlgebra::scalar(const Scalar& c) const {
  Vec v = zero_vec(field(), dim());
  v[one_index()] = c;
  return AlgElement(shared_from_this(), std::move(v));
}

AlgElement ArtinAlgebra::var(std::size_t i) const {
  return AlgElement(shared_from_this(), coords(Polynomial::variable(ring_, i)));
}

std::vector<AlgElement> ArtinAlgebra::variables() const {
  std::vector<AlgElement> out;
  for (std::size_t i = 0; i < nvars(); ++i) out.push_back(var(i));
  return out;
}

AlgElement ArtinAlgebra::element(const Polynomial& p) const { return AlgElement(shared_from_this(), coords(p)); }

AlgElement ArtinAlgebra::parse(const std::string& text) const { return element(parse_polynomial(text, ring_)); }

AlgElement ArtinAlgebra::basis_element(std::size_t i) const {
  Vec v = zero_vec(field(), dim());
  v[i] = Scalar::one(field());
  return AlgElement(shared_from_this(), std::move(v));
}

AlgElement::AlgElement(AlgebraPtr alg, Vec coords) : alg_(std::move(alg)), c_(std::move(coords)) {
  if (c_.size() != alg_->dim()) throw ContextMismatch("coordinate vector has the wrong length");
}

void AlgElement::check(const AlgElement& o) const {
  if (alg_ != o.alg_) throw ContextMismatch("elements of different algebras");
}

bool AlgElement::is_unit() const { return !c_[alg_->one_index()].is_zero(); }

AlgElement AlgElement::inverse() const {
  if (!is_unit()) throw PreconditionError("element " + to_string() + " is not invertible");
  Scalar c = c_[alg_->one_index()];
  Scalar ci = c.inverse();
  // a = c (1 - n) with n nilpotent.
  AlgElement n = alg_->one() - scaled(ci);
  AlgElement sum = alg_->one();
  AlgElement p = alg_->one();
  for (unsigned k = 1; k < alg_->exponent(); ++k) {
    p *= n;
    sum += p;
  }
  return sum.scaled(ci);
}

AlgElement AlgElement::pow(unsigned e) const {
  AlgElement r = alg_->one();
  for (unsigned k = 0; k < e && !r.is_zero(); ++k) r *= *this;
  return r;
}

AlgElement AlgElement::operator-() const {
  AlgElement r(*this);
  for (auto& s : r.c_) s = -s;
  return r;
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  check(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  check(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

AlgElement& AlgElement::operator*=(const AlgElement& o) { return *this = *this * o; }

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  a.check(b);
  return AlgElement(a.alg_, a.alg_->mul(a.c_, b.c_));
}

AlgElement AlgElement::scaled(const Scalar& s) const { return AlgElement(alg_, ci0::scaled(c_, s)); }

bool operator==(const AlgElement& a, const AlgElement& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }

// ---------------------------------------------------------------------------

IdealSubspace::IdealSubspace(AlgebraPtr alg) : alg_(std::move(alg)), ech_(alg_->field(), alg_->dim()) {}

IdealSubspace::IdealSubspace(AlgebraPtr alg, Echelon ech) : alg_(std::move(alg)), ech_(std::move(ech)) {
  if (ech_.dim() != alg_->dim()) throw ContextMismatch("subspace has the wrong ambient dimension");
}

bool IdealSubspace::contains(const AlgElement& a) const {
  if (a.algebra() != alg_) throw ContextMismatch("element of a different algebra");
  return ech_.contains(a.coords());
}

bool IdealSubspace::contains(const IdealSubspace& o) const {
  if (o.alg_ != alg_) throw ContextMismatch("ideals of different algebras");
  return ech_.contains_all(o.ech_);
}

std::vector<AlgElement> IdealSubspace::basis() const {
  std::vector<AlgElement> out;
  for (const auto& r : ech_.rows()) out.emplace_back(alg_, r);
  return out;
}

AlgElement IdealSubspace::reduce(const AlgElement& a) const { return AlgElement(alg_, ech_.reduce(a.coords())); }

bool IdealSubspace::is_closed() const {
  for (const auto& r : ech_.rows())
    for (std::size_t i = 0; i < alg_->nvars(); ++i)
      if (!ech_.contains(alg_->mul_var(i, r))) return false;
  return true;
}

bool operator==(const IdealSubspace& a, const IdealSubspace& b) {
  if (a.alg_ != b.alg_) throw ContextMismatch("ideals of different algebras");
  return a.ech_ == b.ech_;
}

std::string IdealSubspace::to_string() const {
  std::string s = "(";
  auto gens = minimal_generators(*this);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += gens[i].to_string();
  }
  if (gens.empty()) s += "0";
  return s + ")";
}

IdealSubspace zero_ideal(const AlgebraPtr& alg) { return IdealSubspace(alg); }

IdealSubspace unit_ideal(const AlgebraPtr& alg) { return ideal_span(alg, {alg->one()}); }

IdealSubspace maximal_ideal(const AlgebraPtr& alg) {
  Echelon e(alg->field(), alg->dim());
  for (std::size_t i = 0; i + 1 < alg->dim(); ++i) e.insert(alg->basis_element(i).coords());
  return IdealSubspace(alg, std::move(e));
}

IdealSubspace ideal_span(const AlgebraPtr& alg, const std::vector<AlgElement>& gens) {
  Echelon e(alg->field(), alg->dim());
  std::deque<Vec> queue;
  for (const auto& g : gens) {
    if (g.algebra() != alg) throw ContextMismatch("generator of a different algebra");
    if (e.insert(g.coords())) queue.push_back(g.coords());
  }
  while (!queue.empty()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < alg->nvars(); ++i) {
      Vec w = alg->mul_var(i, v);
      if (e.insert(w)) queue.push_back(std::move(w));
    }
  }
  return IdealSubspace(alg, std::move(e));
}

IdealSubspace principal_ideal(const AlgElement& a) { return ideal_span(a.algebra(), {a}); }

IdealSubspace ideal_sum(const IdealSubspace& a, const IdealSubspace& b) {
  if (a.algebra() != b.algebra()) throw ContextMismatch("ideals of different algebras");
  Echelon e = a.echelon();
  for (const auto& r : b.echelon().rows()) e.insert(r);
  return IdealSubspace(a.algebra(), std::move(e));
}

IdealSubspace ideal_product(const IdealSubspace& a, const IdealSubspace& b) {
  if (a.algebra() != b.algebra()) throw ContextMismatch("ideals of different algebras");
  const auto& alg = a.algebra();
  Echelon e(alg->field(), alg->dim());
  for (const auto& r : a.echelon().rows())
    for (const auto& s : b.echelon().rows()) e.insert(alg->mul(r, s));
  return IdealSubspace(alg, std::move(e));
}

IdealSubspace m_times(const IdealSubspace& I) {
  const auto& alg = I.algebra();
  Echelon e(alg->field(), alg->dim());
  for (const auto& r : I.echelon().rows())
    for (std::size_t i = 0; i < alg->nvars(); ++i) e.insert(alg->mul_var(i, r));
  return IdealSubspace(alg, std::move(e));
}

IdealSubspace ideal_intersection(const IdealSubspace& a, const IdealSubspace& b) {
  if (a.algebra() != b.algebra()) throw ContextMismatch("ideals of different algebras");
  const auto& alg = a.algebra();
  // c_a * A_rows - c_b * B_rows = 0 gives the intersection.
  std::vector<Vec> cols;
  for (const auto& r : a.echelon().rows()) cols.push_back(r);
  for (const auto& r : b.echelon().rows()) cols.push_back(ci0::scaled(r, Scalar::from_int(alg->field(), -1)));
  Echelon e(alg->field(), alg->dim());
  for (const auto& k : kernel_of_columns(alg->field(), cols, alg->dim())) {
    Vec v = zero_vec(alg->field(), alg->dim());
    for (std::size_t i = 0; i < a.dim(); ++i) axpy(v, k[i], a.echelon().rows()[i]);
    e.insert(std::move(v));
  }
  return IdealSubspace(alg, std::move(e));
}

IdealSubspace colon(const IdealSubspace& I, const std::vector<AlgElement>& gens) {
  const auto& alg = I.algebra();
  const std::size_t d = alg->dim();
  if (gens.empty()) return unit_ideal(alg);
  std::vector<Vec> cols(d);
  for (std::size_t t = 0; t < d; ++t) {
    Vec img;
    img.reserve(d * gens.size());
    for (const auto& g : gens) {
      if (g.algebra() != alg) throw ContextMismatch("generator of a different algebra");
      Vec r = I.echelon().reduce(alg->mul_basis(t, g.coords()));
      img.insert(img.end(), r.begin(), r.end());
    }
    cols[t] = std::move(img);
  }
  Echelon e(alg->field(), d);
  for (auto& k : kernel_of_columns(alg->field(), cols, d * gens.size())) e.insert(std::move(k));
  return IdealSubspace(alg, std::move(e));
}

IdealSubspace colon(const IdealSubspace& I, const IdealSubspace& J) {
  return colon(I, minimal_generators(J));
}

IdealSubspace annihilator(const AlgebraPtr& alg, const std::vector<AlgElement>& gens) {
  return colon(zero_ideal(alg), gens);
}

IdealSubspace annihilator(const AlgElement& a) { return annihilator(a.algebra(), {a}); }

IdealSubspace socle(const AlgebraPtr& alg) { return annihilator(alg, alg->variables()); }

IdealSubspace maximal_ideal_power(const AlgebraPtr& alg, unsigned k) {
  if (k == 0) return unit_ideal(alg);
  IdealSubspace p = maximal_ideal(alg);
  for (unsigned i = 1; i < k && !p.is_zero(); ++i) p = m_times(p);
  return p;
}

unsigned exponent(const AlgebraPtr& alg) { return alg->exponent(); }

std::size_t embedding_dimension(const AlgebraPtr& alg) { return alg->embedding_dimension(); }

unsigned quotient_exponent(const IdealSubspace& I) {
  if (I.is_unit()) return 0;
  const auto& alg = I.algebra();
  unsigned r = 1;
  IdealSubspace p = maximal_ideal(alg);
  while (!I.contains(p)) {
    p = m_times(p);
    ++r;
  }
  return r;
}

std::size_t minimal_generator_count(const IdealSubspace& I) { return I.dim() - m_times(I).dim(); }

std::vector<AlgElement> minimal_generators(const IdealSubspace& I) {
  Echelon e = m_times(I).echelon();
  std::vector<AlgElement> out;
  for (const auto& r : I.echelon().rows())
    if (e.insert(r)) out.emplace_back(I.algebra(), r);
  return out;
}

bool is_principal(const IdealSubspace& I) { return minimal_generator_count(I) <= 1; }

unsigned m_order(const AlgElement& a) {
  const auto& alg = a.algebra();
  if (a.is_zero()) return alg->exponent();
  unsigned k = 0;
  IdealSubspace p = unit_ideal(alg);
  for (;;) {
    IdealSubspace next = k == 0 ? maximal_ideal(alg) : m_times(p);
    if (!next.contains(a)) return k;
    p = std::move(next);
    ++k;
  }
}

// ---------------------------------------------------------------------------

Quotient::Quotient(const IdealSubspace& I) : source_(I.algebra()), kernel_(I) {
  if (I.is_unit()) throw PreconditionError("cannot form the quotient by the unit ideal");
  std::vector<Polynomial> rels = source_->ideal().generators();
  for (const auto& r : I.echelon().rows()) rels.push_back(source_->lift(r));
  target_ = ArtinAlgebra::from_polynomials(source_->ring(), rels);
  const auto& piv = I.echelon().pivots();
  for (std::size_t i = 0, k = 0; i < source_->dim(); ++i) {
    if (k < piv.size() && piv[k] == i) {
      ++k;
      continue;
    }
    embed_.push_back(i);
  }
  if (embed_.size() != target_->dim())
    throw InvariantViolation("quotient dimension differs from dim A - dim I");
  for (std::size_t j = 0; j < embed_.size(); ++j)
    if (target_->basis()[j] != source_->basis()[embed_[j]])
      throw InvariantViolation("quotient basis is not the non-pivot complement");
}

AlgElement Quotient::project(const AlgElement& a) const {
  if (a.algebra() != source_) throw ContextMismatch("element of a different algebra");
  Vec r = kernel_.echelon().reduce(a.coords());
  Vec v = zero_vec(target_->field(), target_->dim());
  for (std::size_t j = 0; j < embed_.size(); ++j) v[j] = r[embed_[j]];
  return AlgElement(target_, std::move(v));
}

AlgElement Quotient::lift(const AlgElement& a) const {
  if (a.algebra() != target_) throw ContextMismatch("element of a different algebra");
  Vec v = zero_vec(source_->field(), source_->dim());
  for (std::size_t j = 0; j < embed_.size(); ++j) v[embed_[j]] = a.coords()[j];
  return AlgElement(source_, std::move(v));
}

IdealSubspace Quotient::project(const IdealSubspace& J) const {
  std::vector<AlgElement> gens;
  for (const auto& b : J.basis()) gens.push_back(project(b));
  return ideal_span(target_, gens);
}

IdealSubspace Quotient::preimage(const IdealSubspace& J) const {
  if (J.algebra() != target_) throw ContextMismatch("ideal of a different algebra");
  Echelon e = kernel_.echelon();
  for (const auto& b : J.basis()) e.insert(lift(b).coords());
  return IdealSubspace(source_, std::move(e));
}

Quotient quotient_algebra(const IdealSubspace& I) { return Quotient(I); }

bool is_gorenstein(const AlgebraPtr& alg) { return socle(alg).dim() == 1; }

bool is_gorenstein_quotient(const IdealSubspace& I) {
  if (I.is_unit()) throw PreconditionError("the unit ideal has no quotient ring");
  IdealSubspace top = colon(I, I.algebra()->variables());
  return top.dim() - I.dim() == 1;
}

std::vector<std::size_t> hilbert_data(const AlgebraPtr& alg) {
  std::vector<std::size_t> out;
  IdealSubspace p = unit_ideal(alg);
  for (unsigned i = 0; i < alg->exponent(); ++i) {
    IdealSubspace next = i == 0 ? maximal_ideal(alg) : m_times(p);
    out.push_back(p.dim() - next.dim());
    p = std::move(next);
  }
  return out;
}

bool graded_symmetry_check(const AlgebraPtr& alg) {
  if (!alg->graded()) throw NotApplicable("algebra is not graded");
  if (!is_gorenstein(alg)) throw NotApplicable("algebra is not Gorenstein");
  auto h = hilbert_data(alg);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != h[h.size() - 1 - i]) return false;
  return true;
}

}  // namespace ci0
