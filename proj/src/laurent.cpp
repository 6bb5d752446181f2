#include "mloop/laurent.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "mloop/errors.hpp"

namespace mloop {

Multidegree md_add(const Multidegree &a, const Multidegree &b) {
  Multidegree out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] + b[i];
  return out;
}

Multidegree md_neg(const Multidegree &a) {
  Multidegree out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = -a[i];
  return out;
}

bool md_is_zero(const Multidegree &a) {
  for (int v : a)
    if (v != 0)
      return false;
  return true;
}

std::string md_str(const Multidegree &a) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i)
      out << ",";
    out << a[i];
  }
  out << ")";
  return out.str();
}

namespace {
std::atomic<int> g_degree_cap{64};
}

int degree_cap() { return g_degree_cap.load(); }

void set_degree_cap(int cap) {
  if (cap < 1)
    throw ConfigError("degree cap must be positive");
  g_degree_cap.store(cap);
}

void check_degree_cap(const Multidegree &a) {
  int cap = g_degree_cap.load();
  for (int v : a)
    if (v > cap || v < -cap)
      throw DegreeCapExceeded("multidegree " + md_str(a) + " exceeds degree cap " + std::to_string(cap));
}

// ---------------------------------------------------------------------------
// TorusAction

TorusAction::TorusAction(std::vector<unsigned> r, FieldPtr f) : orders(std::move(r)), field(std::move(f)) {
  for (unsigned rk : orders) {
    if (rk < 1)
      throw ConfigError("torus action orders must satisfy r_k >= 1");
    lcm_ = std::lcm(lcm_, rk);
  }
  if (field->order() % lcm_ != 0)
    throw ConfigError("field order " + std::to_string(field->order()) +
                      " is not a multiple of lcm(r) = " + std::to_string(lcm_));
}

Scalar TorusAction::character(const std::vector<unsigned> &delta, const Multidegree &a) const {
  if (delta.size() != orders.size() || a.size() != orders.size())
    throw Error("torus action: rank mismatch");
  unsigned m = field->order();
  long expo = 0;
  for (size_t k = 0; k < orders.size(); ++k)
    expo += static_cast<long>(m / orders[k]) * static_cast<long>(delta[k] % orders[k]) * a[k];
  return Scalar(field, field->zeta_pow(expo));
}

bool TorusAction::weight_invariant(const Multidegree &m) const {
  for (size_t k = 0; k < orders.size(); ++k) {
    int r = static_cast<int>(orders[k]);
    if (((m[k] % r) + r) % r != 0)
      return false;
  }
  return true;
}

std::vector<std::vector<unsigned>> TorusAction::elements() const {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(orders.size(), 0);
  while (true) {
    out.push_back(cur);
    size_t k = 0;
    while (k < orders.size()) {
      if (++cur[k] < orders[k])
        break;
      cur[k] = 0;
      ++k;
    }
    if (k == orders.size())
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(FieldPtr field, size_t vars) : field_(std::move(field)), vars_(vars) {}

LaurentPoly LaurentPoly::monomial(FieldPtr field, const Multidegree &a, const Scalar &c) {
  LaurentPoly p(field, a.size());
  p.add_term(a, c.coeffs());
  return p;
}

LaurentPoly LaurentPoly::constant(FieldPtr field, size_t vars, const Scalar &c) {
  return monomial(std::move(field), Multidegree(vars, 0), c);
}

Scalar LaurentPoly::coeff(const Multidegree &a) const {
  auto it = terms_.find(a);
  if (it == terms_.end())
    return Scalar(field_, field_->zero());
  return Scalar(field_, it->second);
}

void LaurentPoly::add_term(const Multidegree &a, const CycloField::Coeffs &c) {
  if (a.size() != vars_)
    throw Error("laurent term arity mismatch");
  if (field_->is_zero(c))
    return;
  check_degree_cap(a);
  auto [it, fresh] = terms_.emplace(a, c);
  if (!fresh) {
    field_->add_inplace(it->second, c);
    if (field_->is_zero(it->second))
      terms_.erase(it);
  }
}

void LaurentPoly::check_compatible(const LaurentPoly &o) const {
  if (vars_ != o.vars_ || field_.get() != o.field_.get())
    throw Error("laurent operands live in different rings");
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly &o) const {
  check_compatible(o);
  LaurentPoly out = *this;
  for (const auto &[a, c] : o.terms_)
    out.add_term(a, c);
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly &o) const {
  check_compatible(o);
  LaurentPoly out = *this;
  for (const auto &[a, c] : o.terms_) {
    auto neg = c;
    field_->negate_inplace(neg);
    out.add_term(a, neg);
  }
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(field_, vars_);
  for (const auto &[a, c] : terms_) {
    auto neg = c;
    field_->negate_inplace(neg);
    out.terms_.emplace(a, std::move(neg));
  }
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly &o) const {
  check_compatible(o);
  LaurentPoly out(field_, vars_);
  for (const auto &[a, ca] : terms_)
    for (const auto &[b, cb] : o.terms_)
      out.add_term(md_add(a, b), field_->mul(ca, cb));
  return out;
}

LaurentPoly LaurentPoly::scaled(const Scalar &c) const {
  LaurentPoly out(field_, vars_);
  if (c.is_zero())
    return out;
  for (const auto &[a, ca] : terms_)
    out.terms_.emplace(a, field_->mul(ca, c.coeffs()));
  return out;
}

bool LaurentPoly::operator==(const LaurentPoly &o) const {
  check_compatible(o);
  if (terms_.size() != o.terms_.size())
    return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first || !field_->equal(it->second, jt->second))
      return false;
  }
  return true;
}

LaurentPoly LaurentPoly::delta_act(const std::vector<unsigned> &delta, const TorusAction &act) const {
  if (act.rank() != vars_)
    throw Error("torus action rank differs from variable count");
  LaurentPoly out(field_, vars_);
  for (const auto &[a, c] : terms_) {
    Scalar chi = act.character(delta, a);
    out.terms_.emplace(a, field_->mul(c, chi.coeffs()));
  }
  return out;
}

namespace {

std::string coeff_prefix(const CycloField &f, const CycloField::Coeffs &c, bool leading, bool with_star = true) {
  // renders "<coeff>*" with sign handling; parenthesises non-rational scalars
  std::string body;
  bool negative = false;
  if (f.is_rational(c)) {
    Rational q = c[0];
    if (sgn(q) < 0) {
      negative = true;
      q = -q;
    }
    body = rat_str(q);
  } else {
    body = "(" + f.to_string(c) + ")";
  }
  if (with_star)
    body += "*";
  std::string head;
  if (leading)
    head = negative ? "-" : "";
  else
    head = negative ? " - " : " + ";
  return head + body;
}

std::string monomial_str(const Multidegree &a, size_t vars) {
  std::ostringstream out;
  bool any = false;
  for (size_t k = 0; k < vars; ++k) {
    if (a[k] == 0)
      continue;
    if (any)
      out << "*";
    any = true;
    out << "t";
    if (vars > 1)
      out << (k + 1);
    if (a[k] != 1)
      out << "^" << a[k];
  }
  if (!any)
    return "1";
  return out.str();
}

} // namespace

std::string LaurentPoly::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream out;
  bool leading = true;
  // highest degree first for readability
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string mono = monomial_str(it->first, vars_);
    if (mono == "1")
      out << coeff_prefix(*field_, it->second, leading, false);
    else
      out << coeff_prefix(*field_, it->second, leading) << mono;
    leading = false;
  }
  return out.str();
}

LaurentPoly LaurentPoly::parse(const FieldPtr &field, size_t vars, const std::string &text) {
  LaurentPoly out(field, vars);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s += ch;
  if (s.empty())
    throw ParseError("empty laurent literal");
  size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-')
        sign = -sign;
      ++pos;
    }
    if (pos >= s.size())
      throw ParseError("dangling sign in laurent literal: " + text);
    // coefficient: parenthesised scalar, or rational, or implicit 1
    Scalar coeff(field, 1);
    if (s[pos] == '(') {
      size_t close = s.find(')', pos);
      if (close == std::string::npos)
        throw ParseError("unbalanced parenthesis in laurent literal: " + text);
      coeff = Scalar::parse(field, s.substr(pos + 1, close - pos - 1));
      pos = close + 1;
      if (pos < s.size() && s[pos] == '*')
        ++pos;
    } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
        ++pos;
      coeff = Scalar(field, rat_parse(s.substr(start, pos - start)));
      if (pos < s.size() && s[pos] == '*')
        ++pos;
    }
    // monomial: sequence of t / tK factors with optional exponents
    Multidegree a(vars, 0);
    while (pos < s.size() && s[pos] == 't') {
      ++pos;
      size_t k = 0;
      if (vars > 1) {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
          ++pos;
        if (pos == start)
          throw ParseError("expected variable index in laurent literal: " + text);
        k = std::stoul(s.substr(start, pos - start)) - 1;
        if (k >= vars)
          throw ParseError("variable index out of range in laurent literal: " + text);
      }
      int expo = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        size_t start = pos;
        if (pos < s.size() && s[pos] == '-')
          ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
          ++pos;
        if (pos == start)
          throw ParseError("missing exponent in laurent literal: " + text);
        expo = std::atoi(s.substr(start, pos - start).c_str());
      }
      a[k] += expo;
      if (pos < s.size() && s[pos] == '*')
        ++pos;
    }
    if (sign < 0)
      coeff = -coeff;
    out.add_term(a, coeff.coeffs());
  }
  return out;
}

// ---------------------------------------------------------------------------
// OneForm

OneForm::OneForm(FieldPtr field, size_t vars) : field_(std::move(field)), vars_(vars) {}

void OneForm::add_term(const Multidegree &a, size_t k, const CycloField::Coeffs &c) {
  if (a.size() != vars_ || k >= vars_)
    throw Error("one-form term out of range");
  if (field_->is_zero(c))
    return;
  auto key = std::make_pair(a, k);
  auto [it, fresh] = terms_.emplace(key, c);
  if (!fresh) {
    field_->add_inplace(it->second, c);
    if (field_->is_zero(it->second))
      terms_.erase(it);
  }
}

OneForm OneForm::operator+(const OneForm &o) const {
  OneForm out = *this;
  for (const auto &[key, c] : o.terms_)
    out.add_term(key.first, key.second, c);
  return out;
}

OneForm OneForm::operator-(const OneForm &o) const {
  OneForm out = *this;
  for (const auto &[key, c] : o.terms_) {
    auto neg = c;
    field_->negate_inplace(neg);
    out.add_term(key.first, key.second, neg);
  }
  return out;
}

OneForm OneForm::scaled(const Scalar &c) const {
  OneForm out(field_, vars_);
  if (c.is_zero())
    return out;
  for (const auto &[key, v] : terms_)
    out.terms_.emplace(key, field_->mul(v, c.coeffs()));
  return out;
}

OneForm OneForm::mul_poly(const LaurentPoly &p) const {
  OneForm out(field_, vars_);
  for (const auto &[key, v] : terms_)
    for (const auto &[b, c] : p.terms())
      out.add_term(md_add(key.first, b), key.second, field_->mul(v, c));
  return out;
}

bool OneForm::homogeneous_of_degree(const Multidegree &m) const {
  for (const auto &[key, v] : terms_)
    if (key.first != m)
      return false;
  return true;
}

std::string OneForm::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream out;
  bool leading = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[a, k] = it->first;
    out << coeff_prefix(*field_, it->second, leading);
    std::string mono = monomial_str(a, vars_);
    if (mono != "1")
      out << mono << "*";
    out << "L";
    if (vars_ > 1)
      out << (k + 1);
    leading = false;
  }
  return out.str();
}

OneForm exterior_d(const LaurentPoly &p) {
  OneForm out(p.field(), p.vars());
  for (const auto &[a, c] : p.terms()) {
    for (size_t k = 0; k < p.vars(); ++k) {
      if (a[k] == 0)
        continue;
      auto scaled = c;
      p.field()->scale_inplace(scaled, Rational(a[k]));
      out.add_term(a, k, scaled);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// quotient by exact forms

bool OneFormClass::is_zero(const CycloField &f) const {
  for (const auto &c : coords)
    if (!f.is_zero(c))
      return false;
  return true;
}

size_t reduction_drop_index(const Multidegree &m) {
  for (size_t k = 0; k < m.size(); ++k)
    if (m[k] != 0)
      return k;
  return m.size();
}

OneFormClass reduce_mod_exact(const OneForm &w, const Multidegree &m) {
  if (!w.homogeneous_of_degree(m))
    throw NotHomogeneous("one-form is not homogeneous of degree " + md_str(m));
  const auto &field = w.field();
  size_t n = w.vars();
  std::vector<CycloField::Coeffs> coeff(n, field->zero());
  for (const auto &[key, c] : w.terms())
    coeff[key.second] = c;
  size_t drop = reduction_drop_index(m);
  OneFormClass out;
  out.weight = m;
  if (drop == n) {
    // weight 0: no exact forms, full coordinate vector survives
    out.coords = std::move(coeff);
    return out;
  }
  // subtract the multiple of d(t^m) that kills the dropped coordinate:
  // d(t^m) has lambda-coefficients m_k, so c -> c - (c_drop / m_drop) * m
  CycloField::Coeffs ratio = field->mul(coeff[drop], field->inverse(field->from_int(m[drop])));
  out.coords.reserve(n - 1);
  for (size_t k = 0; k < n; ++k) {
    if (k == drop)
      continue;
    auto v = coeff[k];
    field->submul_inplace(v, ratio, field->from_int(m[k]));
    out.coords.push_back(std::move(v));
  }
  return out;
}

size_t omegabar_weight_dim(size_t vars, const Multidegree &m) {
  return md_is_zero(m) ? vars : vars - 1;
}

size_t omegabar_invariant_dim(const TorusAction &act, const Multidegree &m) {
  if (!act.weight_invariant(m))
    return 0;
  return omegabar_weight_dim(act.rank(), m);
}

std::vector<OneFormClass> omegabar_invariant_basis(const TorusAction &act, const Multidegree &m) {
  std::vector<OneFormClass> out;
  if (!act.weight_invariant(m))
    return out;
  const auto &f = act.field;
  size_t n = act.rank();
  size_t drop = reduction_drop_index(m);
  for (size_t k = 0; k < n; ++k) {
    if (k == drop)
      continue; // the dropped direction is the exact line
    OneForm w(f, n);
    w.add_term(m, k, f->one());
    out.push_back(reduce_mod_exact(w, m));
  }
  return out;
}

} // namespace mloop
