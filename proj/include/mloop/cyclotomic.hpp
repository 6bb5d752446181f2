#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mloop/rational.hpp"

namespace mloop {

class CycloField;
using FieldPtr = std::shared_ptr<const CycloField>;

/// The cyclotomic-rational field Q(zeta_m), realised as Q[x]/Phi_m(x).
///
/// Elements are residues stored as coefficient vectors of length
/// phi(m) = deg Phi_m. The field object owns the modulus and provides the
/// arithmetic kernel on raw coefficient vectors; `Scalar` wraps a vector
/// together with its field handle for everyday value semantics.
class CycloField : public std::enable_shared_from_this<CycloField> {
public:
  using Coeffs = std::vector<Rational>;

  /// Builds Q(zeta_m). m = 1 and m = 2 degenerate to the plain rationals.
  static FieldPtr make(unsigned m);

  /// Shared handle to Q = Q(zeta_1), the default coefficient field.
  static FieldPtr rationals();

  unsigned order() const { return order_; }
  size_t degree() const { return degree_; }

  /// Coefficients of the monic m-th cyclotomic polynomial, low degree first.
  const std::vector<Rational> &modulus() const { return modulus_; }

  Coeffs zero() const { return Coeffs(degree_); }
  Coeffs one() const;
  Coeffs from_rational(const Rational &q) const;
  Coeffs from_int(long v) const { return from_rational(Rational(v)); }

  /// zeta_m^k as a residue (k may be negative).
  Coeffs zeta_pow(long k) const;

  bool is_zero(const Coeffs &a) const;
  bool is_rational(const Coeffs &a) const;
  bool equal(const Coeffs &a, const Coeffs &b) const;

  void add_inplace(Coeffs &a, const Coeffs &b) const;
  void sub_inplace(Coeffs &a, const Coeffs &b) const;
  void negate_inplace(Coeffs &a) const;
  void scale_inplace(Coeffs &a, const Rational &q) const;
  Coeffs mul(const Coeffs &a, const Coeffs &b) const;
  /// acc += a * b
  void addmul_inplace(Coeffs &acc, const Coeffs &a, const Coeffs &b) const;
  /// acc -= a * b
  void submul_inplace(Coeffs &acc, const Coeffs &a, const Coeffs &b) const;
  /// Multiplicative inverse of a nonzero residue (extended Euclid mod Phi_m).
  Coeffs inverse(const Coeffs &a) const;

  /// Serialisation of a residue, e.g. "3/2*z^2 - 1*z + 5"; "0" for zero.
  std::string to_string(const Coeffs &a) const;
  Coeffs parse(const std::string &text) const;

private:
  CycloField(unsigned m, std::vector<Rational> modulus);

  /// Reduces a raw product (length <= 2*degree-1) mod Phi_m, in place.
  void reduce_inplace(Coeffs &a) const;

  unsigned order_;
  size_t degree_;
  std::vector<Rational> modulus_;
};

/// Euler's totient, used to size coefficient vectors.
unsigned euler_phi(unsigned m);

/// Coefficients of the m-th cyclotomic polynomial over Q, low degree first.
std::vector<Rational> cyclotomic_polynomial(unsigned m);

/// An element of Q(zeta_m): a coefficient vector plus its field handle.
/// Immutable-by-convention value type; all arithmetic is exact.
class Scalar {
public:
  Scalar() : field_(CycloField::rationals()), c_(field_->zero()) {}
  Scalar(FieldPtr field, CycloField::Coeffs c);
  Scalar(FieldPtr field, const Rational &q);
  Scalar(FieldPtr field, long v) : Scalar(std::move(field), Rational(v)) {}

  const FieldPtr &field() const { return field_; }
  const CycloField::Coeffs &coeffs() const { return c_; }

  bool is_zero() const { return field_->is_zero(c_); }
  bool is_rational() const { return field_->is_rational(c_); }
  /// The constant coefficient; meaningful mainly when is_rational().
  const Rational &rational_part() const { return c_[0]; }

  Scalar operator-() const;
  Scalar operator+(const Scalar &o) const;
  Scalar operator-(const Scalar &o) const;
  Scalar operator*(const Scalar &o) const;
  Scalar operator/(const Scalar &o) const;
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  bool operator==(const Scalar &o) const;
  bool operator!=(const Scalar &o) const { return !(*this == o); }

  Scalar inverse() const;
  std::string str() const { return field_->to_string(c_); }

  static Scalar parse(const FieldPtr &field, const std::string &text);

private:
  void check_same_field(const Scalar &o) const;

  FieldPtr field_;
  CycloField::Coeffs c_;
};

} // namespace mloop
