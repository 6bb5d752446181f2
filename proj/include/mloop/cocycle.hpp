#pragma once

#include <map>

#include "mloop/window.hpp"

namespace mloop {

/// Value of the universal cocycle: for each weight m, coordinates in the
/// Delta-invariant part of (quotient one-forms at weight m) tensor V(g),
/// laid out omega-coordinate-major: index = q * dim_v + v.
class CocycleValue {
public:
  explicit CocycleValue(MultiloopPtr parent);

  const MultiloopPtr &parent() const { return parent_; }
  const std::map<Multidegree, std::vector<CycloField::Coeffs>> &weights() const { return weights_; }
  bool is_zero() const { return weights_.empty(); }

  /// Coordinate length at weight m: invariant quotient dim times dim V.
  size_t coord_len(const Multidegree &m) const;

  void accumulate(const Multidegree &m, const std::vector<CycloField::Coeffs> &coords, bool negate = false);
  CocycleValue operator+(const CocycleValue &o) const;
  CocycleValue operator-(const CocycleValue &o) const;

  std::string str() const;

private:
  MultiloopPtr parent_;
  std::map<Multidegree, std::vector<CycloField::Coeffs>> weights_; // no stored zeros
};

/// One-form with coefficients in V(g); the ambient space of the cocycle
/// evaluation before the quotient is applied. Keyed by (degree, direction).
class VValuedOneForm {
public:
  explicit VValuedOneForm(MultiloopPtr parent);

  const std::map<std::pair<Multidegree, size_t>, std::vector<CycloField::Coeffs>> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void accumulate(const Multidegree &a, size_t dir, const std::vector<CycloField::Coeffs> &v, bool negate = false);

private:
  MultiloopPtr parent_;
  std::map<std::pair<Multidegree, size_t>, std::vector<CycloField::Coeffs>> terms_;
};

/// kappa(xi, d eta) before any quotient, extended C[T^n]-bilinearly:
/// kappa(p (x) x, q lambda_k (x) y) = p q kappa(x,y) lambda_k.
VValuedOneForm kappa_pairing_with_d(const EqMapElement &xi, const EqMapElement &eta);

/// The universal cocycle: xi wedge eta -> class of kappa(xi, d eta),
/// reduced weight-by-weight and restricted to the invariant target.
/// Verifies Delta-equivariance of the unreduced value before reduction.
CocycleValue universal_cocycle(const EqMapElement &xi, const EqMapElement &eta);

/// kappa(xi, d eta) + kappa(eta, d xi) - d kappa(xi, eta), in the ambient
/// V-valued one-forms. Identically zero; returned for exact verification.
VValuedOneForm cocycle_antisymmetry_witness(const EqMapElement &xi, const EqMapElement &eta);

/// Cyclic sum of the universal cocycle over brackets; identically zero.
CocycleValue cocycle_defect(const EqMapElement &xi, const EqMapElement &eta, const EqMapElement &zeta);

/// Coordinates of the universal cocycle on a basis pair t^a v_i, t^b v_j at
/// its support weight a + b (empty when the invariant target there is 0).
std::vector<CycloField::Coeffs> universal_cocycle_pair_coords(const MultiloopAlgebra &M, const Multidegree &a,
                                                              size_t i, const Multidegree &b, size_t j);

/// Result of factoring a 2-cochain through the universal cocycle:
/// psi = phi o omega + b o bracket on every window pair. `inconsistent`
/// is a meaningful negative outcome at the given cutoff, not an error.
struct FactorizationResult {
  bool factored = false;
  std::vector<CycloField::Coeffs> phi; // functional on the weight-w target
  std::vector<CycloField::Coeffs> one_cochain; // functional b on the weight-w slice
  bool phi_nonzero = false;
};

/// Solves the exact linear system for (phi, b). Throws NotACocycle when psi
/// violates the cocycle conditions on its window.
FactorizationResult factor_through_universal(const WindowBasis &window, const CochainMatrix &psi);

/// Direct re-evaluation of every windowed cocycle condition on psi,
/// independent of the solver's row machinery.
bool cochain_is_cocycle(const WindowBasis &window, const CochainMatrix &psi);

} // namespace mloop
