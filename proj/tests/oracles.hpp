#pragma once

// Independent reference computations used by the unit tests. They rely on
// brute-force linear algebra over explicit monomial spans and share no code
// with the Groebner or Artin engines beyond polynomial arithmetic.

#include <map>
#include <vector>

#include "ci0/linalg.hpp"
#include "ci0/poly.hpp"

namespace oracle {

using namespace ci0;

inline std::vector<Monomial> all_monomials_up_to(std::size_t n, std::uint32_t deg) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i == n) {
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, deg);
  return out;
}

/// Macaulay-matrix membership: f in span{m*g : deg(m*g) <= D}.
inline bool member_up_to_degree(const Polynomial& f, const std::vector<Polynomial>& gens, std::uint32_t D) {
  const auto& ring = f.ring();
  const std::size_t n = ring->nvars();
  auto monos = all_monomials_up_to(n, D);
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i].exponents()] = i;
  auto to_vec = [&](const Polynomial& p) {
    Vec v = zero_vec(ring->field(), monos.size());
    for (const auto& t : p.terms()) v[index.at(t.mono.exponents())] = t.coef;
    return v;
  };
  Echelon e(ring->field(), monos.size());
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    for (const auto& m : monos) {
      if (static_cast<long>(m.degree()) + g.degree() > static_cast<long>(D)) continue;
      e.insert(to_vec(g.times_monomial(m, Scalar::one(ring->field()))));
    }
  }
  if (f.degree() > static_cast<long>(D)) return false;
  return e.contains(to_vec(f));
}

/// dim_K S/(I + m^D) counted by Macaulay matrices; equals dim S/I once m^D lies in I.
inline std::size_t quotient_dim_truncated(const RingPtr& ring, const std::vector<Polynomial>& gens, std::uint32_t D) {
  const std::size_t n = ring->nvars();
  auto monos = all_monomials_up_to(n, D - 1);
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i].exponents()] = i;
  Echelon e(ring->field(), monos.size());
  for (const auto& g : gens) {
    for (const auto& m : monos) {
      Polynomial p = g.times_monomial(m, Scalar::one(ring->field())).truncated(D);
      Vec v = zero_vec(ring->field(), monos.size());
      for (const auto& t : p.terms()) v[index.at(t.mono.exponents())] = t.coef;
      e.insert(v);
    }
  }
  return monos.size() - e.rank();
}

}  // namespace oracle
