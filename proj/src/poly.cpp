#include "ci0/poly.hpp"

#include <algorithm>
#include <cctype>

#include "ci0/errors.hpp"

namespace ci0 {

Monomial::Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {
  for (auto v : e_) deg_ += v;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i, std::uint32_t power) {
  Monomial m(nvars);
  m.e_[i] = power;
  m.deg_ = power;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (deg_ > other.deg_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  r.deg_ += o.deg_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (o.e_[i] > e_[i]) throw PreconditionError("monomial division is not exact");
    r.e_[i] -= o.e_[i];
  }
  r.deg_ -= o.deg_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  r.deg_ = 0;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    r.e_[i] = std::max(e_[i], o.e_[i]);
    r.deg_ += r.e_[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] && o.e_[i]) return false;
  return true;
}

MonomialOrder MonomialOrder::parse(std::string_view s) {
  if (s == "degrevlex" || s == "grevlex" || s.empty()) return MonomialOrder(OrderKind::DegRevLex);
  if (s == "lex" || s == "plex") return MonomialOrder(OrderKind::Lex);
  throw ParseError("unknown monomial order '" + std::string(s) + "'", 0);
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  if (kind_ == OrderKind::Lex) {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
  }
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

PolyRing::PolyRing(Field field, std::vector<std::string> vars, MonomialOrder order)
    : field_(field), vars_(std::move(vars)), order_(order) {
  if (vars_.empty()) throw PreconditionError("polynomial ring needs at least one variable");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
      throw PreconditionError("bad variable name '" + v + "'");
    for (char c : v)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw PreconditionError("bad variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j] == v) throw PreconditionError("duplicate variable '" + v + "'");
  }
}

int PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

bool PolyRing::same_as(const PolyRing& o) const {
  return field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_;
}

RingPtr make_ring(Field field, std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const PolyRing>(field, std::move(vars), order);
}

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  Polynomial p(ring);
  if (!c.is_zero()) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

Polynomial Polynomial::from_int(RingPtr ring, long c) {
  Field f = ring->field();
  return constant(std::move(ring), Scalar::from_int(f, c));
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, Scalar c) {
  Polynomial p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  Field f = ring->field();
  std::size_t n = ring->nvars();
  return monomial(std::move(ring), Monomial::variable(n, i), Scalar::one(f));
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(ring);
  MonomialOrder ord = ring->order();
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  return p;
}

long Polynomial::degree() const {
  long d = -1;
  for (const auto& t : terms_) d = std::max<long>(d, t.mono.degree());
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coef;
  return Scalar::zero(ring_->field());
}

Scalar Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return Scalar::zero(ring_->field());
}

void Polynomial::check(const Polynomial& o) const {
  if (ring_ == o.ring_) return;
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_))
    throw ContextMismatch("polynomials live in different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check(o);
  if (o.terms_.empty()) return *this;
  MonomialOrder ord = ring_->order();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size())
      c = -1;
    else if (j == o.terms_.size())
      c = 1;
    else
      c = ord.compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar s = std::move(terms_[i].coef);
      s += o.terms_[j].coef;
      if (!s.is_zero()) out.push_back({std::move(terms_[i].mono), std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check(b);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coef * t.coef});
  return Polynomial::from_terms(a.ring_, std::move(prod));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, t.coef * c});
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Scalar& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
  return r;
}

void Polynomial::sub_mul(const Scalar& c, const Monomial& m, const Polynomial& g) {
  *this -= g.times_monomial(m, c);
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = from_int(ring_, 1);
  Polynomial b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coefficient().inverse());
}

Polynomial Polynomial::truncated(std::uint32_t bound) const {
  Polynomial r(ring_);
  for (const auto& t : terms_)
    if (t.mono.degree() < bound) r.terms_.push_back(t);
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.terms_.empty()) return true;
  a.check(b);
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& vars) {
  if (m.is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += '*';
    s += vars[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = t.coef.field().is_rational() && t.coef.rational() < 0;
    Scalar mag = negative ? -t.coef : t.coef;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (t.mono.is_one()) {
      out += mag.to_string();
    } else {
      if (!mag.is_one()) out += mag.to_string() + "*";
      out += monomial_to_string(t.mono, ring_->vars());
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : s_(text), ring_(ring) {}

  Polynomial run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    Polynomial t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  unsigned exponent() {
    std::string d = digits();
    if (d.size() > 6) fail("exponent too large");
    return static_cast<unsigned>(std::stoul(d));
  }

  Polynomial factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!eat(')')) fail("expected ')'");
      if (eat('^')) inner = inner.pow(exponent());
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits());
      mpz_class den(1);
      if (eat('/')) {
        std::size_t at = pos_;
        den = mpz_class(digits());
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      return Polynomial::constant(ring_, Scalar::from_fraction(ring_->field(), num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      int idx = ring_->index_of(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      unsigned e = 1;
      if (eat('^')) e = exponent();
      return Polynomial::monomial(ring_, Monomial::variable(ring_->nvars(), idx, e),
                                  Scalar::one(ring_->field()));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).run();
}

}  // namespace ci0
