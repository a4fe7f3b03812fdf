#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ci0/field.hpp"

namespace ci0 {

/// Exponent vector, one entry per variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);
  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1);

  std::size_t size() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t degree() const { return deg_; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }
  bool is_one() const { return deg_ == 0; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& o) const;
  /// Requires divides(*this, o) reversed: returns this / o.
  Monomial operator/(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }

 private:
  std::vector<std::uint32_t> e_;
  std::uint32_t deg_ = 0;
};

enum class OrderKind { DegRevLex, Lex };

/// Global monomial order; variable 0 has the highest priority.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(OrderKind kind) : kind_(kind) {}
  OrderKind kind() const { return kind_; }
  std::string name() const { return kind_ == OrderKind::Lex ? "lex" : "degrevlex"; }
  static MonomialOrder parse(std::string_view s);
  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;

  friend bool operator==(MonomialOrder a, MonomialOrder b) { return a.kind_ == b.kind_; }
  friend bool operator!=(MonomialOrder a, MonomialOrder b) { return a.kind_ != b.kind_; }

 private:
  OrderKind kind_ = OrderKind::DegRevLex;
};

/// Ambient polynomial ring K[x_1..x_n] with a monomial order.
class PolyRing {
 public:
  PolyRing(Field field, std::vector<std::string> vars, MonomialOrder order = {});
  Field field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  MonomialOrder order() const { return order_; }
  /// Index of a variable name, or -1.
  int index_of(std::string_view name) const;
  bool same_as(const PolyRing& o) const;

 private:
  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(Field field, std::vector<std::string> vars, MonomialOrder order = {});

struct Term {
  Monomial mono;
  Scalar coef;
};

/// Sparse polynomial; terms are strictly decreasing under the ring order
/// and carry no zero coefficient.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial from_int(RingPtr ring, long c);
  static Polynomial monomial(RingPtr ring, Monomial m, Scalar c);
  static Polynomial variable(RingPtr ring, std::size_t i);
  /// Terms in any order; duplicates are combined.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coefficient() const { return terms_.front().coef; }
  /// Total degree; -1 for zero.
  long degree() const;
  bool is_homogeneous() const;
  Scalar coefficient(const Monomial& m) const;
  /// Coefficient of the constant monomial.
  Scalar constant_term() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_monomial(const Monomial& m, const Scalar& c) const;
  /// this -= c * m * g, the reduction step.
  void sub_mul(const Scalar& c, const Monomial& m, const Polynomial& g);
  Polynomial pow(unsigned e) const;
  /// Divide by the leading coefficient.
  Polynomial monic() const;
  /// Drop every term of degree >= bound.
  Polynomial truncated(std::uint32_t bound) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check(const Polynomial& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars);

/// Grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := coefficient | var ('^' uint)? | '(' expr ')' ('^' uint)?
///   coefficient := int ('/' uint)?
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

}  // namespace ci0
