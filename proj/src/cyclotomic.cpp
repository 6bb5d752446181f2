#include "mloop/cyclotomic.hpp"

#include <cctype>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "mloop/errors.hpp"

namespace mloop {

std::string rat_str(const Rational &q) { return q.get_str(); }

Rational rat_parse(const std::string &s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      t += ch;
  if (t.empty())
    throw ParseError("empty rational literal");
  size_t pos = t[0] == '+' || t[0] == '-' ? 1 : 0;
  if (pos == t.size())
    throw ParseError("bad rational literal: " + s);
  bool seen_slash = false;
  for (size_t i = pos; i < t.size(); ++i) {
    if (t[i] == '/' && !seen_slash && i + 1 < t.size() && i > pos) {
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw ParseError("bad rational literal: " + s);
  }
  Rational q(t);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// dense univariate polynomial helpers over Q (low degree first)

namespace {

using Poly = std::vector<Rational>;

void poly_trim(Poly &p) {
  while (!p.empty() && rat_is_zero(p.back()))
    p.pop_back();
}

Poly poly_mul(const Poly &a, const Poly &b) {
  if (a.empty() || b.empty())
    return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (rat_is_zero(a[i]))
      continue;
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] += a[i] * b[j];
  }
  poly_trim(out);
  return out;
}

// quotient and remainder; b need not be monic
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly &b) {
  poly_trim(a);
  if (b.empty())
    throw std::logic_error("polynomial division by zero");
  Poly q;
  if (a.size() >= b.size())
    q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational &lead = b.back();
  while (a.size() >= b.size()) {
    Rational c = a.back() / lead;
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j)
      a[shift + j] -= c * b[j];
    poly_trim(a);
    if (a.empty())
      break;
  }
  poly_trim(q);
  return {q, a};
}

// extended Euclid: returns g and u with u*a == g (mod m); g is monic
void poly_gcdext_mod(const Poly &a, const Poly &m, Poly &g, Poly &u) {
  Poly r0 = m, r1 = a;
  Poly s0 = {}, s1 = {Rational(1)};
  poly_trim(r1);
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1);
    Poly s2 = s0;
    Poly qs = poly_mul(q, s1);
    if (s2.size() < qs.size())
      s2.resize(qs.size(), Rational(0));
    for (size_t i = 0; i < qs.size(); ++i)
      s2[i] -= qs[i];
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  g = std::move(r0);
  u = std::move(s0);
  if (!g.empty() && g.back() != 1) {
    Rational lead = g.back();
    for (auto &c : g)
      c /= lead;
    for (auto &c : u)
      c /= lead;
  }
}

} // namespace

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  unsigned n = m;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0)
        n /= p;
      result -= result / p;
    }
  }
  if (n > 1)
    result -= result / n;
  return result;
}

std::vector<Rational> cyclotomic_polynomial(unsigned m) {
  if (m == 0)
    throw ConfigError("cyclotomic order must be positive");
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
  std::vector<Poly> phi(m + 1);
  for (unsigned k = 1; k <= m; ++k) {
    if (m % k != 0)
      continue;
    Poly num(k + 1, Rational(0));
    num[0] = -1;
    num[k] = 1;
    for (unsigned d = 1; d < k; ++d) {
      if (k % d != 0)
        continue;
      auto [q, r] = poly_divmod(num, phi[d]);
      if (!r.empty())
        throw std::logic_error("cyclotomic polynomial division not exact");
      num = std::move(q);
    }
    phi[k] = std::move(num);
  }
  return phi[m];
}

// ---------------------------------------------------------------------------
// CycloField

CycloField::CycloField(unsigned m, std::vector<Rational> modulus)
    : order_(m), degree_(modulus.size() - 1), modulus_(std::move(modulus)) {}

FieldPtr CycloField::make(unsigned m) {
  if (m == 0)
    throw ConfigError("cyclotomic order must be positive");
  return FieldPtr(new CycloField(m, cyclotomic_polynomial(m)));
}

FieldPtr CycloField::rationals() {
  static FieldPtr q = make(1);
  return q;
}

CycloField::Coeffs CycloField::one() const {
  Coeffs c(degree_);
  c[0] = 1;
  return c;
}

CycloField::Coeffs CycloField::from_rational(const Rational &q) const {
  Coeffs c(degree_);
  c[0] = q;
  return c;
}

CycloField::Coeffs CycloField::zeta_pow(long k) const {
  long e = k % static_cast<long>(order_);
  if (e < 0)
    e += order_;
  Coeffs raw(static_cast<size_t>(e) + 1, Rational(0));
  raw.back() = 1;
  reduce_inplace(raw);
  raw.resize(degree_, Rational(0));
  return raw;
}

bool CycloField::is_zero(const Coeffs &a) const {
  for (const auto &c : a)
    if (!rat_is_zero(c))
      return false;
  return true;
}

bool CycloField::is_rational(const Coeffs &a) const {
  for (size_t i = 1; i < a.size(); ++i)
    if (!rat_is_zero(a[i]))
      return false;
  return true;
}

bool CycloField::equal(const Coeffs &a, const Coeffs &b) const {
  for (size_t i = 0; i < degree_; ++i)
    if (a[i] != b[i])
      return false;
  return true;
}

void CycloField::add_inplace(Coeffs &a, const Coeffs &b) const {
  for (size_t i = 0; i < degree_; ++i)
    a[i] += b[i];
}

void CycloField::sub_inplace(Coeffs &a, const Coeffs &b) const {
  for (size_t i = 0; i < degree_; ++i)
    a[i] -= b[i];
}

void CycloField::negate_inplace(Coeffs &a) const {
  for (auto &c : a)
    c = -c;
}

void CycloField::scale_inplace(Coeffs &a, const Rational &q) const {
  for (auto &c : a)
    c *= q;
}

void CycloField::reduce_inplace(Coeffs &a) const {
  // modulus is monic of degree `degree_`
  for (size_t i = a.size(); i-- > degree_;) {
    if (rat_is_zero(a[i]))
      continue;
    Rational c = a[i];
    a[i] = 0;
    for (size_t j = 0; j < degree_; ++j)
      a[i - degree_ + j] -= c * modulus_[j];
  }
}

CycloField::Coeffs CycloField::mul(const Coeffs &a, const Coeffs &b) const {
  if (degree_ == 1) {
    Coeffs out(1);
    out[0] = a[0] * b[0];
    return out;
  }
  Coeffs raw(2 * degree_ - 1, Rational(0));
  for (size_t i = 0; i < degree_; ++i) {
    if (rat_is_zero(a[i]))
      continue;
    for (size_t j = 0; j < degree_; ++j) {
      if (rat_is_zero(b[j]))
        continue;
      raw[i + j] += a[i] * b[j];
    }
  }
  reduce_inplace(raw);
  raw.resize(degree_);
  return raw;
}

void CycloField::addmul_inplace(Coeffs &acc, const Coeffs &a, const Coeffs &b) const {
  if (degree_ == 1) {
    acc[0] += a[0] * b[0];
    return;
  }
  Coeffs p = mul(a, b);
  add_inplace(acc, p);
}

void CycloField::submul_inplace(Coeffs &acc, const Coeffs &a, const Coeffs &b) const {
  if (degree_ == 1) {
    acc[0] -= a[0] * b[0];
    return;
  }
  Coeffs p = mul(a, b);
  sub_inplace(acc, p);
}

CycloField::Coeffs CycloField::inverse(const Coeffs &a) const {
  if (is_zero(a))
    throw Error("division by zero in Q(zeta_" + std::to_string(order_) + ")");
  if (degree_ == 1) {
    Coeffs out(1);
    out[0] = Rational(1) / a[0];
    return out;
  }
  Poly ap(a.begin(), a.end());
  poly_trim(ap);
  Poly g, u;
  poly_gcdext_mod(ap, modulus_, g, u);
  if (g.size() != 1)
    throw std::logic_error("cyclotomic modulus not irreducible over input");
  // g == 1, so u * a == 1 (mod Phi_m)
  u.resize(degree_, Rational(0));
  reduce_inplace(u);
  u.resize(degree_, Rational(0));
  return u;
}

std::string CycloField::to_string(const Coeffs &a) const {
  std::ostringstream out;
  bool first = true;
  for (size_t i = degree_; i-- > 0;) {
    if (rat_is_zero(a[i]))
      continue;
    Rational c = a[i];
    if (first) {
      if (sgn(c) < 0) {
        out << "-";
        c = -c;
      }
      first = false;
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0)
        c = -c;
    }
    if (i == 0) {
      out << rat_str(c);
    } else {
      out << rat_str(c) << "*z";
      if (i > 1)
        out << "^" << i;
    }
  }
  if (first)
    return "0";
  return out.str();
}

CycloField::Coeffs CycloField::parse(const std::string &text) const {
  Coeffs result = zero();
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s += ch;
  if (s.empty())
    throw ParseError("empty scalar literal");
  size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-')
        sign = -sign;
      ++pos;
    }
    if (pos >= s.size())
      throw ParseError("dangling sign in scalar literal: " + text);
    // coefficient: digits with optional /
    size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
      ++pos;
    Rational coeff(1);
    bool have_coeff = pos > start;
    if (have_coeff)
      coeff = rat_parse(s.substr(start, pos - start));
    long expo = 0;
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 'z')) {
      if (s[pos] == '*')
        ++pos;
      if (pos >= s.size() || s[pos] != 'z')
        throw ParseError("expected 'z' in scalar literal: " + text);
      ++pos;
      expo = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        size_t estart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
          ++pos;
        if (pos == estart)
          throw ParseError("missing exponent in scalar literal: " + text);
        expo = std::stol(s.substr(estart, pos - estart));
      }
    } else if (!have_coeff) {
      throw ParseError("bad term in scalar literal: " + text);
    }
    if (sign < 0)
      coeff = -coeff;
    Coeffs term = zeta_pow(expo);
    scale_inplace(term, coeff);
    add_inplace(result, term);
    any = true;
  }
  if (!any)
    throw ParseError("empty scalar literal");
  return result;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(FieldPtr field, CycloField::Coeffs c) : field_(std::move(field)), c_(std::move(c)) {
  if (c_.size() != field_->degree())
    throw std::logic_error("scalar coefficient vector has wrong length");
}

Scalar::Scalar(FieldPtr field, const Rational &q) : field_(std::move(field)), c_(field_->from_rational(q)) {}

void Scalar::check_same_field(const Scalar &o) const {
  if (field_.get() != o.field_.get())
    throw Error("scalars from different cyclotomic fields");
}

Scalar Scalar::operator-() const {
  auto c = c_;
  field_->negate_inplace(c);
  return Scalar(field_, std::move(c));
}

Scalar Scalar::operator+(const Scalar &o) const {
  check_same_field(o);
  auto c = c_;
  field_->add_inplace(c, o.c_);
  return Scalar(field_, std::move(c));
}

Scalar Scalar::operator-(const Scalar &o) const {
  check_same_field(o);
  auto c = c_;
  field_->sub_inplace(c, o.c_);
  return Scalar(field_, std::move(c));
}

Scalar Scalar::operator*(const Scalar &o) const {
  check_same_field(o);
  return Scalar(field_, field_->mul(c_, o.c_));
}

Scalar Scalar::operator/(const Scalar &o) const {
  check_same_field(o);
  return Scalar(field_, field_->mul(c_, field_->inverse(o.c_)));
}

Scalar &Scalar::operator+=(const Scalar &o) {
  check_same_field(o);
  field_->add_inplace(c_, o.c_);
  return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) {
  check_same_field(o);
  field_->sub_inplace(c_, o.c_);
  return *this;
}

Scalar &Scalar::operator*=(const Scalar &o) {
  check_same_field(o);
  c_ = field_->mul(c_, o.c_);
  return *this;
}

bool Scalar::operator==(const Scalar &o) const {
  check_same_field(o);
  return field_->equal(c_, o.c_);
}

Scalar Scalar::inverse() const { return Scalar(field_, field_->inverse(c_)); }

Scalar Scalar::parse(const FieldPtr &field, const std::string &text) {
  return Scalar(field, field->parse(text));
}

} // namespace mloop
