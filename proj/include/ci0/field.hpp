#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ci0 {

/// Coefficient field: the rationals or a prime field GF(p), p < 2^31.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint64_t p);
  /// Accepts "Q", "QQ", "GF(p)", "ZZ/p" or a bare prime.
  static Field parse(std::string_view text);

  bool is_rational() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
  friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator; GF(p) values are residues in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Scalar& other);
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&&) noexcept = default;
  ~Scalar() = default;

  static Scalar zero(Field f);
  static Scalar one(Field f);
  static Scalar from_int(Field f, long v);
  static Scalar from_mpz(Field f, const mpz_class& v);
  /// num/den mapped into the field; throws if den vanishes in it.
  static Scalar from_fraction(Field f, const mpz_class& num, const mpz_class& den);
  /// Uniform over GF(p); integers in [-range, range] over Q.
  static Scalar random(Field f, std::mt19937_64& rng, long range = 5);

  Field field() const;
  bool is_zero() const { return p_ == 0 ? q_ == nullptr : r_ == 0; }
  bool is_one() const;
  std::uint32_t residue() const { return r_; }
  /// Value as a rational; for GF(p) the canonical residue as an integer.
  mpq_class rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  /// this += a * b without temporaries on the GF(p) path.
  void add_mul(const Scalar& a, const Scalar& b);
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Total order used only for canonical sorting (not a field order).
  static int compare(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  void check(const Scalar& o) const;
  void set_rational(mpq_class v);

  std::uint32_t p_ = 0;
  std::uint32_t r_ = 0;
  std::unique_ptr<mpq_class> q_;  // null means zero (rational case only)
};

}  // namespace ci0
