#pragma once

#include <map>
#include <memory>

#include "mloop/laurent.hpp"
#include "mloop/lie_algebra.hpp"

namespace mloop {

/// Residue class of a multidegree modulo the torus orders; indexes the joint
/// eigenspaces of the twisting automorphisms.
using EigenKey = std::vector<unsigned>;

class MultiloopAlgebra;
class EqMapElement;
using MultiloopPtr = std::shared_ptr<const MultiloopAlgebra>;

/// The twisted multiloop algebra: Laurent polynomials on the torus tensored
/// with g, restricted to Delta-invariants. Built from a Lie algebra, a torus
/// action with orders r_k, and one commuting finite-order automorphism per
/// generator of Delta. The degree-a slice is t^a tensor the joint eigenspace
/// g_{a mod r}, where sigma_k acts on g_{m} by zeta_{r_k}^{-m_k}.
class MultiloopAlgebra : public std::enable_shared_from_this<MultiloopAlgebra> {
public:
  struct JointEigenspace {
    ExactMatrix basis;              // rows are eigenvectors in ambient coordinates
    std::vector<size_t> free_cols;  // unit-coordinate positions of the canonical basis
  };

  static MultiloopPtr build(LieAlgebra algebra, TorusAction action, std::vector<FiniteAutomorphism> automorphisms,
                            std::string name = "");

  const LieAlgebra &algebra() const { return algebra_; }
  const TorusAction &action() const { return action_; }
  const std::vector<FiniteAutomorphism> &automorphisms() const { return automorphisms_; }
  const UniversalForm &universal_form() const { return *uform_; }
  const FieldPtr &field() const { return algebra_.field(); }
  size_t rank() const { return action_.orders.size(); }
  const std::string &name() const { return name_; }

  EigenKey key_of(const Multidegree &a) const;
  const JointEigenspace &eigenspace(const EigenKey &key) const;
  size_t eigen_dim(const EigenKey &key) const { return eigenspace(key).basis.rows(); }
  const std::map<EigenKey, JointEigenspace> &eigenspaces() const { return spaces_; }

  /// Dimension of the degree-a slice t^a tensor g_{a mod r}.
  size_t graded_dim(const Multidegree &a) const { return eigen_dim(key_of(a)); }

  /// Basis of the degree-a slice as elements t^a tensor v_i.
  std::vector<EqMapElement> graded_basis(const Multidegree &a) const;

  /// Bracket coefficients in eigenspace coordinates:
  /// [v_i of key ka, v_j of key kb] = sum_l T[l] v_l of key ka+kb.
  const std::vector<CycloField::Coeffs> &bracket_tensor(const EigenKey &ka, const EigenKey &kb, size_t i,
                                                        size_t j) const;

  /// Converts eigen coordinates at `key` to ambient g coordinates.
  LieAlgebra::Vec to_ambient(const EigenKey &key, const std::vector<CycloField::Coeffs> &coords) const;
  /// Expresses an ambient vector in the eigenbasis at `key`; throws when the
  /// vector is outside the eigenspace.
  std::vector<CycloField::Coeffs> to_eigen(const EigenKey &key, const LieAlgebra::Vec &x) const;

  /// Induced action of sigma_k on V(g), cached for equivariance checks.
  const ExactMatrix &v_action(size_t k) const { return v_actions_[k]; }

  EigenKey add_keys(const EigenKey &a, const EigenKey &b) const;

private:
  MultiloopAlgebra(LieAlgebra algebra, TorusAction action, std::vector<FiniteAutomorphism> automorphisms,
                   std::string name);

  LieAlgebra algebra_;
  TorusAction action_;
  std::vector<FiniteAutomorphism> automorphisms_;
  std::string name_;
  std::map<EigenKey, JointEigenspace> spaces_;
  // bracket tensors keyed by (ka, kb), laid out [i * dim_b + j][l]
  std::map<std::pair<EigenKey, EigenKey>, std::vector<std::vector<CycloField::Coeffs>>> brackets_;
  std::unique_ptr<UniversalForm> uform_;
  std::vector<ExactMatrix> v_actions_;
};

/// Finite sum of terms t^a tensor x with x in the matching eigenspace,
/// stored in eigenspace coordinates so Delta-invariance is structural.
class EqMapElement {
public:
  explicit EqMapElement(MultiloopPtr parent);

  /// t^a tensor (eigen coordinates) at the slice of degree a.
  static EqMapElement term(MultiloopPtr parent, const Multidegree &a, std::vector<CycloField::Coeffs> eigen_coords);
  /// t^a tensor x for ambient x; validates eigenspace membership.
  static EqMapElement term_ambient(MultiloopPtr parent, const Multidegree &a, const LieAlgebra::Vec &x);
  /// t^a tensor (i-th eigenbasis vector of the matching eigenspace).
  static EqMapElement basis_term(MultiloopPtr parent, const Multidegree &a, size_t i);

  const MultiloopPtr &parent() const { return parent_; }
  const std::map<Multidegree, std::vector<CycloField::Coeffs>> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  EqMapElement operator+(const EqMapElement &o) const;
  EqMapElement operator-(const EqMapElement &o) const;
  EqMapElement scaled(const Scalar &c) const;

  /// Pointwise bracket; degrees add, coefficients go through the bracket
  /// tensor of the matching eigenspaces.
  EqMapElement bracket(const EqMapElement &o) const;

  /// Ambient g coordinates of the degree-a term (zero vector when absent).
  LieAlgebra::Vec ambient_term(const Multidegree &a) const;

  std::string str() const;

private:
  void add_to(const Multidegree &a, const std::vector<CycloField::Coeffs> &coords, bool negate);
  void check_same_parent(const EqMapElement &o) const;

  MultiloopPtr parent_;
  std::map<Multidegree, std::vector<CycloField::Coeffs>> terms_;
};

} // namespace mloop
