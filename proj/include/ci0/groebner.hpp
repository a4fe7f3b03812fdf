#pragma once

#include <cstddef>
#include <vector>

#include "ci0/poly.hpp"

namespace ci0 {

/// Reduced, monic Groebner basis of an ideal of the ambient ring.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const RingPtr& ring() const { return ring_; }
  /// Sorted by increasing leading monomial.
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<Polynomial>& source() const { return source_; }
  bool is_unit_ideal() const;

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b);
  friend bool operator!=(const GroebnerBasis& a, const GroebnerBasis& b) { return !(a == b); }

 private:
  friend GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens);
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> source_;
};

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens);

/// Full reduction of f by an arbitrary list of divisors.
Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& divisors);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Ideal equality; throws ContextMismatch when the orders differ.
bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b);

/// Monomials outside the leading-term ideal, in increasing order.
/// Throws NotZeroDimensional when the set is infinite.
std::vector<Monomial> standard_monomials(const GroebnerBasis& gb);

/// All monomials of the given total degree, in decreasing order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t degree);

/// dim_K Q/M'Q for the ideal Q of gb, computed in S/m^(N+2). Requires m^N in Q.
std::size_t lifted_minimal_generator_count(const GroebnerBasis& gb, std::uint32_t N);

}  // namespace ci0
