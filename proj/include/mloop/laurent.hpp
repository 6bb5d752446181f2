#pragma once

#include <map>
#include <string>
#include <vector>

#include "mloop/cyclotomic.hpp"

namespace mloop {

/// Exponent vector a in Z^n of a Laurent monomial t^a.
using Multidegree = std::vector<int>;

Multidegree md_add(const Multidegree &a, const Multidegree &b);
Multidegree md_neg(const Multidegree &a);
bool md_is_zero(const Multidegree &a);
std::string md_str(const Multidegree &a);

/// Guard against runaway degree growth in scripted experiments. Exceeding
/// the cap raises DegreeCapExceeded, never truncates.
int degree_cap();
void set_degree_cap(int cap);
void check_degree_cap(const Multidegree &a);

/// The group Delta = prod_k Z/r_k acting on C[t_1^±,...,t_n^±] by roots of
/// unity: the generator of the k-th factor scales t_k by zeta_{r_k}.
struct TorusAction {
  std::vector<unsigned> orders; // r_k >= 1
  FieldPtr field;               // order() a multiple of lcm(r_k)

  TorusAction(std::vector<unsigned> r, FieldPtr f);

  size_t rank() const { return orders.size(); }
  unsigned lcm_order() const { return lcm_; }

  /// zeta_m^{sum_k (m/r_k) delta_k a_k}, the character of delta on t^a.
  Scalar character(const std::vector<unsigned> &delta, const Multidegree &a) const;

  /// True when every r_k divides m_k: the weight-m component of the
  /// one-form space is Delta-invariant exactly in this case.
  bool weight_invariant(const Multidegree &m) const;

  /// All group elements, in mixed-radix order. Sized prod r_k; callers keep
  /// orders small.
  std::vector<std::vector<unsigned>> elements() const;

private:
  unsigned lcm_ = 1;
};

/// Sparse multivariate Laurent polynomial with exact coefficients.
class LaurentPoly {
public:
  LaurentPoly(FieldPtr field, size_t vars);

  static LaurentPoly monomial(FieldPtr field, const Multidegree &a, const Scalar &c);
  static LaurentPoly constant(FieldPtr field, size_t vars, const Scalar &c);

  const FieldPtr &field() const { return field_; }
  size_t vars() const { return vars_; }
  const std::map<Multidegree, CycloField::Coeffs> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coeff(const Multidegree &a) const;
  void add_term(const Multidegree &a, const CycloField::Coeffs &c);

  LaurentPoly operator+(const LaurentPoly &o) const;
  LaurentPoly operator-(const LaurentPoly &o) const;
  LaurentPoly operator*(const LaurentPoly &o) const;
  LaurentPoly operator-() const;
  LaurentPoly scaled(const Scalar &c) const;
  bool operator==(const LaurentPoly &o) const;

  /// Action of the group element delta (componentwise reduced mod r).
  LaurentPoly delta_act(const std::vector<unsigned> &delta, const TorusAction &act) const;

  std::string str() const;
  static LaurentPoly parse(const FieldPtr &field, size_t vars, const std::string &text);

private:
  void check_compatible(const LaurentPoly &o) const;

  FieldPtr field_;
  size_t vars_;
  std::map<Multidegree, CycloField::Coeffs> terms_; // no stored zeros
};

/// Algebraic one-form on the torus in the logarithmic frame
/// lambda_k = t_k^{-1} dt_k, so the term t^a lambda_k has degree exactly a.
class OneForm {
public:
  OneForm(FieldPtr field, size_t vars);

  const FieldPtr &field() const { return field_; }
  size_t vars() const { return vars_; }

  /// Terms keyed by (degree, direction k).
  const std::map<std::pair<Multidegree, size_t>, CycloField::Coeffs> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Multidegree &a, size_t k, const CycloField::Coeffs &c);
  OneForm operator+(const OneForm &o) const;
  OneForm operator-(const OneForm &o) const;
  OneForm scaled(const Scalar &c) const;

  /// Multiplication by a Laurent polynomial.
  OneForm mul_poly(const LaurentPoly &p) const;

  bool homogeneous_of_degree(const Multidegree &m) const;

  std::string str() const;

private:
  FieldPtr field_;
  size_t vars_;
  std::map<std::pair<Multidegree, size_t>, CycloField::Coeffs> terms_;
};

/// d(t^a) = sum_k a_k t^a lambda_k, extended linearly.
OneForm exterior_d(const LaurentPoly &p);

/// A degree-m class in the quotient of one-forms by exact forms, in the
/// canonical reduced coordinates: for m != 0 the coordinate at the first
/// index with m_k != 0 is eliminated (length n-1); for m = 0 nothing is
/// exact and all n coordinates remain.
struct OneFormClass {
  Multidegree weight;
  std::vector<CycloField::Coeffs> coords;

  bool is_zero(const CycloField &f) const;
};

/// Index dropped by the canonical complement at weight m (first k with
/// m_k != 0); n when m = 0 (nothing dropped).
size_t reduction_drop_index(const Multidegree &m);

/// Reduces a homogeneous one-form of degree m modulo the exact line.
/// Throws NotHomogeneous when the form has terms outside weight m.
OneFormClass reduce_mod_exact(const OneForm &w, const Multidegree &m);

/// Dimension of the weight-m component of the quotient: n-1 for m != 0, n
/// for m = 0.
size_t omegabar_weight_dim(size_t vars, const Multidegree &m);

/// Dimension of the Delta-invariant part of the weight-m component:
/// the full weight dimension when r_k | m_k for all k, else 0.
size_t omegabar_invariant_dim(const TorusAction &act, const Multidegree &m);

/// Canonical basis of the Delta-invariant weight-m component: the reduced
/// classes of the monomial forms t^m lambda_k that survive the quotient.
/// Empty exactly when omegabar_invariant_dim is 0.
std::vector<OneFormClass> omegabar_invariant_basis(const TorusAction &act, const Multidegree &m);

} // namespace mloop
