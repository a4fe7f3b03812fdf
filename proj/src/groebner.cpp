#include "ci0/groebner.hpp"

#include <algorithm>
#include <set>

#include "ci0/errors.hpp"

namespace ci0 {

namespace {

const Polynomial* find_divisor(const Monomial& m, const std::vector<Polynomial>& divisors) {
  for (const auto& g : divisors)
    if (!g.is_zero() && g.leading_monomial().divides(m)) return &g;
  return nullptr;
}

void check_ring(const RingPtr& ring, const Polynomial& p) {
  if (p.ring() != ring && !(p.ring() && p.ring()->same_as(*ring)))
    throw ContextMismatch("generator lives in a different ring");
}

}  // namespace

Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& divisors) {
  Polynomial rest = f;
  std::vector<Term> done;
  while (!rest.is_zero()) {
    const Term& lt = rest.leading();
    const Polynomial* g = find_divisor(lt.mono, divisors);
    if (g) {
      Scalar c = lt.coef / g->leading_coefficient();
      Monomial m = lt.mono / g->leading_monomial();
      rest.sub_mul(c, m, *g);
    } else {
      done.push_back(lt);
      rest -= Polynomial::monomial(rest.ring(), lt.mono, lt.coef);
    }
  }
  return Polynomial::from_terms(f.ring(), std::move(done));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial a = f.times_monomial(l / f.leading_monomial(), f.leading_coefficient().inverse());
  Polynomial b = g.times_monomial(l / g.leading_monomial(), g.leading_coefficient().inverse());
  return a - b;
}

bool GroebnerBasis::is_unit_ideal() const {
  return gens_.size() == 1 && gens_[0].leading_monomial().is_one();
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  check_ring(ring_, f);
  return reduce_by(f, gens_);
}

bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
  return a.ring_->same_as(*b.ring_) && a.gens_ == b.gens_;
}

bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (a.ring()->order() != b.ring()->order()) throw ContextMismatch("monomial orders differ");
  if (a.ring()->field() != b.ring()->field() || a.ring()->vars() != b.ring()->vars())
    throw ContextMismatch("ideals live in different rings");
  return a.generators() == b.generators();
}

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  GroebnerBasis out;
  out.ring_ = ring;
  out.source_ = gens;
  const MonomialOrder ord = ring->order();

  std::vector<Polynomial> G;
  for (const auto& g : gens) {
    check_ring(ring, g);
    Polynomial r = reduce_by(g, G);
    if (!r.is_zero()) G.push_back(r.monic());
  }

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (G[i].is_zero()) continue;
      pairs.push_back({i, j, G[i].leading_monomial().lcm(G[j].leading_monomial())});
      pending.insert({i, j});
    }
  };
  for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);

  auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
      return ord.compare(a.lcm, b.lcm) < 0;
    });
    Pair p = *best;
    pairs.erase(best);
    pending.erase({p.i, p.j});

    const Polynomial& gi = G[p.i];
    const Polynomial& gj = G[p.j];
    if (gi.leading_monomial().coprime(gj.leading_monomial())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == p.i || k == p.j || G[k].is_zero()) continue;
      if (!G[k].leading_monomial().divides(p.lcm)) continue;
      if (!pending.count(key(p.i, k)) && !pending.count(key(p.j, k))) chain = true;
    }
    if (chain) continue;

    Polynomial r = reduce_by(s_polynomial(gi, gj), G);
    if (r.is_zero()) continue;
    G.push_back(r.monic());
    add_pairs(G.size() - 1);
  }

  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = G[j].leading_monomial();
      const Monomial& b = G[i].leading_monomial();
      if (a.divides(b) && (a != b || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Term& lt = minimal[i].leading();
    Polynomial tail = minimal[i] - Polynomial::monomial(ring, lt.mono, lt.coef);
    reduced.push_back((Polynomial::monomial(ring, lt.mono, lt.coef) + reduce_by(tail, others)).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  out.gens_ = std::move(reduced);
  return out;
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& gb) {
  const std::size_t n = gb.ring()->nvars();
  const auto& G = gb.generators();
  if (gb.is_unit_ideal()) return {};
  std::vector<std::uint32_t> bound(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& g : G) {
      const Monomial& m = g.leading_monomial();
      if (m[i] > 0 && m[i] == m.degree() && (bound[i] == 0 || m[i] < bound[i])) bound[i] = m[i];
    }
    if (bound[i] == 0)
      throw NotZeroDimensional("no pure power of " + gb.ring()->vars()[i] + " among leading terms");
  }
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(n, 0);
  for (;;) {
    Monomial m(e);
    bool standard = true;
    for (const auto& g : G)
      if (g.leading_monomial().divides(m)) {
        standard = false;
        break;
      }
    if (standard) out.push_back(m);
    std::size_t i = 0;
    while (i < n && ++e[i] == bound[i]) e[i++] = 0;
    if (i == n) break;
  }
  const MonomialOrder ord = gb.ring()->order();
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) < 0; });
  return out;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

std::size_t lifted_minimal_generator_count(const GroebnerBasis& gb, std::uint32_t N) {
  const RingPtr& ring = gb.ring();
  const std::size_t n = ring->nvars();
  const Scalar one = Scalar::one(ring->field());
  for (const auto& m : monomials_of_degree(n, N))
    if (!gb.contains(Polynomial::monomial(ring, m, one)))
      throw PreconditionError("m^" + std::to_string(N) + " is not contained in the ideal");
  const std::uint32_t T = N + 2;
  std::vector<Polynomial> gens;
  for (const auto& m : monomials_of_degree(n, T)) gens.push_back(Polynomial::monomial(ring, m, one));
  for (const auto& g : gb.generators())
    for (std::size_t i = 0; i < n; ++i)
      gens.push_back((g * Polynomial::variable(ring, i)).truncated(T));
  GroebnerBasis mq = buchberger(ring, gens);
  return standard_monomials(mq).size() - standard_monomials(gb).size();
}

}  // namespace ci0
