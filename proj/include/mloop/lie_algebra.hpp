#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mloop/exact_matrix.hpp"

namespace mloop {

/// Finite-dimensional Lie algebra over a cyclotomic-rational field, given by
/// structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
/// Antisymmetry and the Jacobi identity are validated exactly at
/// construction.
class LieAlgebra {
public:
  using Coeffs = CycloField::Coeffs;
  using Vec = std::vector<Coeffs>; // ambient coordinates, length dim

  /// Validates and wraps raw structure constants. An optional matrix
  /// realisation (basis as square matrices) enables the conjugation-style
  /// automorphism presets.
  static LieAlgebra from_structure_constants(FieldPtr field,
                                             std::vector<std::vector<std::vector<Scalar>>> constants,
                                             std::string name = "custom",
                                             std::vector<std::string> basis_names = {});

  // presets
  static LieAlgebra sl2(FieldPtr field);
  static LieAlgebra sl3(FieldPtr field);
  static LieAlgebra abelian(FieldPtr field, size_t dim);
  static LieAlgebra direct_sum(const LieAlgebra &a, const LieAlgebra &b);
  /// Preset lookup: "sl2", "sl3", "sl2+sl2", "abelian:<d>".
  static LieAlgebra preset(const std::string &name, FieldPtr field);

  const FieldPtr &field() const { return field_; }
  size_t dim() const { return dim_; }
  const std::string &name() const { return name_; }
  const std::string &basis_name(size_t i) const { return basis_names_[i]; }

  /// c[i][j][k] as a coefficient vector.
  const Coeffs &c(size_t i, size_t j, size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  /// Bracket of coordinate vectors.
  Vec bracket(const Vec &x, const Vec &y) const;
  /// Bracket of basis elements e_i, e_j.
  Vec bracket_basis(size_t i, size_t j) const;

  /// Matrix of ad(e_i) acting on coordinates.
  ExactMatrix ad_basis(size_t i) const;

  /// K(x,y) = trace(ad x ad y), exact and symmetric.
  ExactMatrix killing_form() const;

  /// Canonical basis of der(g): solutions of D[x,y] = [Dx,y] + [x,Dy].
  std::vector<ExactMatrix> derivations() const;

  /// Matrix realisation (square matrices per basis element), when the
  /// preset carries one; needed by the conjugation automorphism preset.
  bool has_realization() const { return !realization_.empty(); }
  const std::vector<ExactMatrix> &realization() const { return realization_; }
  size_t realization_size() const { return realization_.empty() ? 0 : realization_[0].rows(); }

  /// Expresses a square matrix in the realisation basis; throws when the
  /// matrix is outside the span.
  Vec realization_coords(const ExactMatrix &mat) const;

  Vec zero_vec() const { return Vec(dim_, field_->zero()); }
  Vec basis_vec(size_t i) const;

private:
  LieAlgebra() = default;
  void validate() const;

  FieldPtr field_;
  size_t dim_ = 0;
  std::string name_;
  std::vector<std::string> basis_names_;
  std::vector<Coeffs> c_; // flattened (i*dim + j)*dim + k
  std::vector<ExactMatrix> realization_;
};

/// V(g) = Sym^2(g) / der(g)-action, with the universal invariant form
/// kappa(x,y) = class of the symmetrised tensor. Coordinates are the
/// reduced-echelon complement of the derivation-action subspace, with the
/// Sym^2 basis ordered lexicographically by (i,j), i <= j.
class UniversalForm {
public:
  UniversalForm(const LieAlgebra &L);

  size_t dim_v() const { return free_pairs_.size(); }
  /// Canonical coordinate labels: the surviving (i,j) generator pairs.
  const std::vector<std::pair<size_t, size_t>> &coordinate_pairs() const { return free_pairs_; }

  /// kappa on basis elements, as a V-coordinate vector.
  const std::vector<CycloField::Coeffs> &kappa_basis(size_t i, size_t j) const;

  /// Bilinear extension of kappa to coordinate vectors.
  std::vector<CycloField::Coeffs> kappa(const LieAlgebra::Vec &x, const LieAlgebra::Vec &y) const;

  /// Projection Sym^2(g) -> V(g) in canonical coordinates; input indexed by
  /// sym_index.
  std::vector<CycloField::Coeffs> project(const std::vector<CycloField::Coeffs> &sym2) const;

  /// Induced action on V of a linear map A on g: [u . v] -> [Au . Av].
  ExactMatrix induced_action(const ExactMatrix &A) const;

  size_t sym_dim() const { return sym_dim_; }
  size_t sym_index(size_t i, size_t j) const;

  const FieldPtr &field() const { return field_; }

private:
  FieldPtr field_;
  size_t dim_ = 0;
  size_t sym_dim_ = 0;
  RrefAccumulator span_; // derivation-action subspace of Sym^2, canonical RREF
  std::vector<std::pair<size_t, size_t>> free_pairs_;
  std::vector<size_t> coord_of_sym_;                    // sym index -> V coordinate or npos
  std::vector<std::vector<CycloField::Coeffs>> kappa_;  // per sym index: V coords
};

/// Finite-order bracket-preserving linear map on g. Validates A[x,y] =
/// [Ax,Ay], A^r = 1, and minimality of r among its divisors.
class FiniteAutomorphism {
public:
  FiniteAutomorphism(const LieAlgebra &L, ExactMatrix matrix, unsigned order);

  const ExactMatrix &matrix() const { return matrix_; }
  unsigned order() const { return order_; }

  LieAlgebra::Vec apply(const LieAlgebra::Vec &x) const;

  static FiniteAutomorphism identity(const LieAlgebra &L);
  /// x -> -x^T in the matrix realisation (order 2 for sl_n, n >= 2).
  static FiniteAutomorphism neg_transpose(const LieAlgebra &L);
  /// Conjugation by diag(zeta_q^{c_0}, ..., zeta_q^{c_{N-1}}) in the matrix
  /// realisation.
  static FiniteAutomorphism diag_conjugation(const LieAlgebra &L, unsigned q, const std::vector<long> &exponents);

private:
  ExactMatrix matrix_;
  unsigned order_;
};

struct Eigenspace {
  long exponent;      // eigenvalue is zeta_r^exponent
  ExactMatrix basis;  // rows are eigenvectors in ambient coordinates
};

/// Eigenspace decomposition of a finite automorphism: eigenvalues zeta_r^j,
/// j = 0..r-1. The ambient field order must be a multiple of r. Verifies
/// that dimensions sum to dim(g) and that the decomposition grades the
/// bracket.
std::vector<Eigenspace> automorphism_eigenspaces(const LieAlgebra &L, const FiniteAutomorphism &A);

} // namespace mloop
