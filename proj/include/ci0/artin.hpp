#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ci0/groebner.hpp"
#include "ci0/linalg.hpp"
#include "ci0/poly.hpp"

namespace ci0 {

class ArtinAlgebra;
using AlgebraPtr = std::shared_ptr<const ArtinAlgebra>;
class AlgElement;

/// A = S/Q for an M-primary ideal Q, as a finite-dimensional K-algebra on
/// the standard monomials of Q. Basis order is decreasing, so the last
/// basis element is 1 and row-echelon pivots are leading monomials.
class ArtinAlgebra : public std::enable_shared_from_this<ArtinAlgebra> {
 public:
  static AlgebraPtr build(Field field, const std::vector<std::string>& vars,
                          const std::vector<std::string>& relations, MonomialOrder order = {});
  static AlgebraPtr from_polynomials(const RingPtr& ring, const std::vector<Polynomial>& relations);

  const RingPtr& ring() const { return ring_; }
  Field field() const { return ring_->field(); }
  std::size_t nvars() const { return ring_->nvars(); }
  const std::vector<std::string>& vars() const { return ring_->vars(); }
  std::size_t dim() const { return basis_.size(); }
  const GroebnerBasis& ideal() const { return gb_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t one_index() const { return basis_.size() - 1; }
  bool graded() const { return graded_; }
  unsigned exponent() const { return exponent_; }
  std::size_t embedding_dimension() const { return embdim_; }

  /// Basis index of a standard monomial, or -1.
  long index_of(const Monomial& m) const;
  Vec coords(const Polynomial& p) const;
  Polynomial lift(const Vec& v) const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec mul_var(std::size_t i, const Vec& a) const;
  /// Coordinates of b_i * v.
  Vec mul_basis(std::size_t i, const Vec& v) const;

  AlgElement zero() const;
  AlgElement one() const;
  AlgElement scalar(const Scalar& c) const;
  AlgElement var(std::size_t i) const;
  std::vector<AlgElement> variables() const;
  AlgElement element(const Polynomial& p) const;
  AlgElement parse(const std::string& text) const;
  AlgElement basis_element(std::size_t i) const;

  ArtinAlgebra(const RingPtr& ring, GroebnerBasis gb);

 private:
  void build_tables();
  void compute_invariants();

  RingPtr ring_;
  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> table_;  // d*d, sparse
  bool graded_ = false;
  unsigned exponent_ = 0;
  std::size_t embdim_ = 0;
};

/// Element of an Artin algebra in standard-monomial coordinates.
class AlgElement {
 public:
  AlgElement() = default;
  AlgElement(AlgebraPtr alg, Vec coords);

  const AlgebraPtr& algebra() const { return alg_; }
  const Vec& coords() const { return c_; }
  bool is_zero() const { return is_zero_vec(c_); }
  /// True when the constant coefficient is nonzero.
  bool is_unit() const;
  AlgElement inverse() const;
  Polynomial lift() const { return alg_->lift(c_); }
  std::string to_string() const { return lift().to_string(); }
  AlgElement pow(unsigned e) const;

  AlgElement operator-() const;
  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  AlgElement& operator*=(const AlgElement& o);
  AlgElement scaled(const Scalar& s) const;
  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
  friend bool operator==(const AlgElement& a, const AlgElement& b);
  friend bool operator!=(const AlgElement& a, const AlgElement& b) { return !(a == b); }

 private:
  void check(const AlgElement& o) const;
  AlgebraPtr alg_;
  Vec c_;
};

/// Ideal of an Artin algebra as a reduced-echelon K-subspace.
class IdealSubspace {
 public:
  IdealSubspace() = default;
  explicit IdealSubspace(AlgebraPtr alg);
  /// The rows must already span an ideal; closure is verified.
  IdealSubspace(AlgebraPtr alg, Echelon ech);

  const AlgebraPtr& algebra() const { return alg_; }
  const Echelon& echelon() const { return ech_; }
  std::size_t dim() const { return ech_.rank(); }
  bool is_zero() const { return ech_.rank() == 0; }
  bool is_unit() const { return ech_.rank() == alg_->dim(); }
  bool contains(const AlgElement& a) const;
  bool contains(const IdealSubspace& o) const;
  std::vector<AlgElement> basis() const;
  AlgElement reduce(const AlgElement& a) const;
  bool is_closed() const;

  friend bool operator==(const IdealSubspace& a, const IdealSubspace& b);
  friend bool operator!=(const IdealSubspace& a, const IdealSubspace& b) { return !(a == b); }

  std::string to_string() const;

 private:
  AlgebraPtr alg_;
  Echelon ech_;
};

IdealSubspace zero_ideal(const AlgebraPtr& alg);
IdealSubspace unit_ideal(const AlgebraPtr& alg);
IdealSubspace maximal_ideal(const AlgebraPtr& alg);
IdealSubspace ideal_span(const AlgebraPtr& alg, const std::vector<AlgElement>& gens);
IdealSubspace principal_ideal(const AlgElement& a);
IdealSubspace ideal_sum(const IdealSubspace& a, const IdealSubspace& b);
IdealSubspace ideal_product(const IdealSubspace& a, const IdealSubspace& b);
/// M * I.
IdealSubspace m_times(const IdealSubspace& I);
IdealSubspace ideal_intersection(const IdealSubspace& a, const IdealSubspace& b);
/// {a : a g in I for every g in gens}.
IdealSubspace colon(const IdealSubspace& I, const std::vector<AlgElement>& gens);
IdealSubspace colon(const IdealSubspace& I, const IdealSubspace& J);
IdealSubspace annihilator(const AlgebraPtr& alg, const std::vector<AlgElement>& gens);
IdealSubspace annihilator(const AlgElement& a);
IdealSubspace socle(const AlgebraPtr& alg);
IdealSubspace maximal_ideal_power(const AlgebraPtr& alg, unsigned k);
unsigned exponent(const AlgebraPtr& alg);
std::size_t embedding_dimension(const AlgebraPtr& alg);
/// Least r with M^r contained in I; the exponent of A/I.
unsigned quotient_exponent(const IdealSubspace& I);
std::size_t minimal_generator_count(const IdealSubspace& I);
/// A minimal generating set chosen greedily from the echelon basis.
std::vector<AlgElement> minimal_generators(const IdealSubspace& I);
bool is_principal(const IdealSubspace& I);
/// Order of a in the M-adic filtration: max k with a in M^k; dim for a = 0.
unsigned m_order(const AlgElement& a);

/// A/I with projection and the canonical coordinate lift.
class Quotient {
 public:
  Quotient(const IdealSubspace& I);
  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const IdealSubspace& kernel() const { return kernel_; }
  AlgElement project(const AlgElement& a) const;
  AlgElement lift(const AlgElement& a) const;
  IdealSubspace project(const IdealSubspace& J) const;
  /// Preimage of an ideal of the quotient.
  IdealSubspace preimage(const IdealSubspace& J) const;

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  IdealSubspace kernel_;
  std::vector<std::size_t> embed_;  // target basis index -> source basis index
};

Quotient quotient_algebra(const IdealSubspace& I);
bool is_gorenstein_quotient(const IdealSubspace& I);
bool is_gorenstein(const AlgebraPtr& alg);
std::vector<std::size_t> hilbert_data(const AlgebraPtr& alg);
/// Throws NotApplicable unless the algebra is graded with a 1-dimensional socle.
bool graded_symmetry_check(const AlgebraPtr& alg);

}  // namespace ci0
