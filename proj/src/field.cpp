#include "ci0/field.hpp"

#include <cctype>
#include <string>

#include "ci0/errors.hpp"

namespace ci0 {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31)) throw PreconditionError("field characteristic must be below 2^31");
  if (!is_prime(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
  return Field(static_cast<std::uint32_t>(p));
}

Field Field::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "Q" || s == "QQ") return rationals();
  std::string digits;
  if (s.rfind("GF(", 0) == 0 && s.size() > 4 && s.back() == ')')
    digits = s.substr(3, s.size() - 4);
  else if (s.rfind("ZZ/", 0) == 0)
    digits = s.substr(3);
  else
    digits = s;
  if (digits.empty() || digits.size() > 12) throw ParseError("bad field descriptor '" + std::string(text) + "'", 0);
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("bad field descriptor '" + std::string(text) + "'", 0);
  return prime(std::stoull(digits));
}

std::string Field::name() const { return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")"; }

namespace {

std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce_mpz(const mpz_class& v, std::uint32_t p) {
  mpz_class r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

Scalar::Scalar(const Scalar& o) : p_(o.p_), r_(o.r_) {
  if (o.q_) q_ = std::make_unique<mpq_class>(*o.q_);
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this == &o) return *this;
  p_ = o.p_;
  r_ = o.r_;
  if (o.q_) {
    if (q_)
      *q_ = *o.q_;
    else
      q_ = std::make_unique<mpq_class>(*o.q_);
  } else {
    q_.reset();
  }
  return *this;
}

Scalar Scalar::zero(Field f) {
  Scalar s;
  s.p_ = f.characteristic();
  return s;
}

Scalar Scalar::one(Field f) { return from_int(f, 1); }

Scalar Scalar::from_int(Field f, long v) {
  Scalar s = zero(f);
  if (f.is_rational()) {
    if (v != 0) s.q_ = std::make_unique<mpq_class>(v);
  } else {
    long m = v % static_cast<long>(s.p_);
    if (m < 0) m += s.p_;
    s.r_ = static_cast<std::uint32_t>(m);
  }
  return s;
}

Scalar Scalar::from_mpz(Field f, const mpz_class& v) {
  Scalar s = zero(f);
  if (f.is_rational()) {
    if (v != 0) s.q_ = std::make_unique<mpq_class>(v);
  } else {
    s.r_ = reduce_mpz(v, s.p_);
  }
  return s;
}

Scalar Scalar::from_fraction(Field f, const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  if (f.is_rational()) {
    Scalar s = zero(f);
    mpq_class q(num, den);
    q.canonicalize();
    s.set_rational(std::move(q));
    return s;
  }
  Scalar d = from_mpz(f, den);
  if (d.is_zero()) throw PreconditionError("denominator vanishes in " + f.name());
  return from_mpz(f, num) / d;
}

Scalar Scalar::random(Field f, std::mt19937_64& rng, long range) {
  if (f.is_finite()) {
    std::uniform_int_distribution<std::uint32_t> dist(0, f.characteristic() - 1);
    Scalar s = zero(f);
    s.r_ = dist(rng);
    return s;
  }
  std::uniform_int_distribution<long> dist(-range, range);
  return from_int(f, dist(rng));
}

Field Scalar::field() const { return p_ == 0 ? Field::rationals() : Field::prime(p_); }

bool Scalar::is_one() const {
  if (p_ != 0) return r_ == 1 % p_;
  return q_ && *q_ == 1;
}

mpq_class Scalar::rational() const {
  if (p_ != 0) return mpq_class(static_cast<unsigned long>(r_));
  return q_ ? *q_ : mpq_class(0);
}

void Scalar::check(const Scalar& o) const {
  if (p_ != o.p_) throw ContextMismatch("scalar field mismatch");
}

void Scalar::set_rational(mpq_class v) {
  if (v == 0)
    q_.reset();
  else if (q_)
    *q_ = std::move(v);
  else
    q_ = std::make_unique<mpq_class>(std::move(v));
}

Scalar Scalar::operator-() const {
  Scalar s(*this);
  if (p_ != 0) {
    s.r_ = r_ == 0 ? 0 : p_ - r_;
  } else if (s.q_) {
    mpq_neg(s.q_->get_mpq_t(), s.q_->get_mpq_t());
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check(o);
  if (p_ != 0) {
    std::uint64_t v = std::uint64_t{r_} + o.r_;
    r_ = static_cast<std::uint32_t>(v >= p_ ? v - p_ : v);
  } else if (o.q_) {
    if (q_) {
      *q_ += *o.q_;
      if (*q_ == 0) q_.reset();
    } else {
      q_ = std::make_unique<mpq_class>(*o.q_);
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check(o);
  if (p_ != 0) {
    r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + (p_ - o.r_);
  } else if (o.q_) {
    if (q_) {
      *q_ -= *o.q_;
      if (*q_ == 0) q_.reset();
    } else {
      q_ = std::make_unique<mpq_class>(-*o.q_);
    }
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check(o);
  if (p_ != 0) {
    r_ = static_cast<std::uint32_t>(std::uint64_t{r_} * o.r_ % p_);
  } else if (q_) {
    if (o.q_)
      *q_ *= *o.q_;
    else
      q_.reset();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

void Scalar::add_mul(const Scalar& a, const Scalar& b) {
  if (p_ != 0) {
    if (a.p_ != p_ || b.p_ != p_) throw ContextMismatch("scalar field mismatch");
    std::uint64_t v = (std::uint64_t{a.r_} * b.r_ + r_) % p_;
    r_ = static_cast<std::uint32_t>(v);
    return;
  }
  check(a);
  check(b);
  if (!a.q_ || !b.q_) return;
  if (!q_) {
    q_ = std::make_unique<mpq_class>(*a.q_ * *b.q_);
    return;
  }
  *q_ += *a.q_ * *b.q_;
  if (*q_ == 0) q_.reset();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  Scalar s = zero(field());
  if (p_ != 0)
    s.r_ = mod_pow(r_, p_ - 2, p_);
  else
    s.q_ = std::make_unique<mpq_class>(1 / *q_);
  return s;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result = one(field());
  Scalar b = *this;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  if (a.p_ != 0) return a.r_ == b.r_;
  if (!a.q_ || !b.q_) return !a.q_ && !b.q_;
  return *a.q_ == *b.q_;
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return a.p_ < b.p_ ? -1 : 1;
  if (a.p_ != 0) return a.r_ < b.r_ ? -1 : (a.r_ > b.r_ ? 1 : 0);
  int c = cmp(a.rational(), b.rational());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string Scalar::to_string() const {
  if (p_ != 0) return std::to_string(r_);
  return q_ ? q_->get_str() : "0";
}

}  // namespace ci0
