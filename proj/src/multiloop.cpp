#include "mloop/multiloop.hpp"

#include <sstream>

#include "mloop/errors.hpp"

namespace mloop {

MultiloopAlgebra::MultiloopAlgebra(LieAlgebra algebra, TorusAction action,
                                   std::vector<FiniteAutomorphism> automorphisms, std::string name)
    : algebra_(std::move(algebra)), action_(std::move(action)), automorphisms_(std::move(automorphisms)),
      name_(std::move(name)) {}

MultiloopPtr MultiloopAlgebra::build(LieAlgebra algebra, TorusAction action,
                                     std::vector<FiniteAutomorphism> automorphisms, std::string name) {
  FieldPtr field = algebra.field();
  const auto &f = *field;
  size_t n = action.orders.size();
  if (automorphisms.size() != n)
    throw ConfigError("need one automorphism per torus factor");
  if (action.field.get() != field.get())
    throw ConfigError("torus action and algebra use different fields");
  for (size_t k = 0; k < n; ++k)
    if (action.orders[k] % automorphisms[k].order() != 0)
      throw OrderMismatch("automorphism order " + std::to_string(automorphisms[k].order()) +
                          " does not divide r_" + std::to_string(k + 1) + " = " +
                          std::to_string(action.orders[k]));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      auto ab = automorphisms[a].matrix() * automorphisms[b].matrix();
      auto ba = automorphisms[b].matrix() * automorphisms[a].matrix();
      if (!(ab == ba))
        throw NonCommuting("automorphisms " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                           " do not commute");
    }

  auto M = MultiloopPtr(new MultiloopAlgebra(std::move(algebra), std::move(action), std::move(automorphisms), name));
  auto *mut = const_cast<MultiloopAlgebra *>(M.get());
  const LieAlgebra &L = mut->algebra_;
  size_t d = L.dim();
  unsigned m = field->order();

  // joint eigenspaces: sigma_k x = zeta_{r_k}^{-key_k} x for all k
  std::vector<EigenKey> keys;
  {
    EigenKey cur(n, 0);
    while (true) {
      keys.push_back(cur);
      size_t k = 0;
      while (k < n) {
        if (++cur[k] < mut->action_.orders[k])
          break;
        cur[k] = 0;
        ++k;
      }
      if (k == n)
        break;
    }
  }
  size_t total = 0;
  for (const auto &key : keys) {
    // stack (sigma_k - zeta^{-key_k}) over all k and take the joint kernel
    ExactMatrix sys(field, n * d, d);
    for (size_t k = 0; k < n; ++k) {
      auto ev = f.zeta_pow(-static_cast<long>(m / mut->action_.orders[k]) * static_cast<long>(key[k]));
      const auto &A = mut->automorphisms_[k].matrix();
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
          auto entry = A.at(i, j);
          if (i == j)
            f.sub_inplace(entry, ev);
          sys.at(k * d + i, j) = std::move(entry);
        }
    }
    auto kernel = sys.rank_nullspace();
    total += kernel.basis.rows();
    JointEigenspace sp{std::move(kernel.basis), {}};
    // canonical nullspace rows carry a unit coordinate in their free column
    auto rr = sys.rref();
    {
      size_t p = 0;
      for (size_t c0 = 0; c0 < d; ++c0) {
        if (p < rr.pivots.size() && rr.pivots[p] == c0)
          ++p;
        else
          sp.free_cols.push_back(c0);
      }
    }
    mut->spaces_.emplace(key, std::move(sp));
  }
  if (total != d)
    throw NotAutomorphism("joint eigenspaces do not decompose g (eigenvalues escape the character lattice)");

  // bracket tensors on all eigenspace pairs
  for (const auto &[ka, sa] : mut->spaces_) {
    for (const auto &[kb, sb] : mut->spaces_) {
      EigenKey kc = mut->add_keys(ka, kb);
      const auto &sc = mut->spaces_.at(kc);
      std::vector<std::vector<CycloField::Coeffs>> tensor(sa.basis.rows() * sb.basis.rows());
      for (size_t i = 0; i < sa.basis.rows(); ++i)
        for (size_t j = 0; j < sb.basis.rows(); ++j) {
          LieAlgebra::Vec x(d), y(d);
          for (size_t c0 = 0; c0 < d; ++c0) {
            x[c0] = sa.basis.at(i, c0);
            y[c0] = sb.basis.at(j, c0);
          }
          auto br = L.bracket(x, y);
          tensor[i * sb.basis.rows() + j] = mut->to_eigen(kc, br); // asserts grading compatibility
        }
      mut->brackets_.emplace(std::make_pair(ka, kb), std::move(tensor));
    }
  }

  mut->uform_ = std::make_unique<UniversalForm>(L);
  for (const auto &sigma : mut->automorphisms_)
    mut->v_actions_.push_back(mut->uform_->induced_action(sigma.matrix()));
  return M;
}

std::vector<EqMapElement> MultiloopAlgebra::graded_basis(const Multidegree &a) const {
  auto self = shared_from_this();
  std::vector<EqMapElement> out;
  size_t dim = graded_dim(a);
  out.reserve(dim);
  for (size_t i = 0; i < dim; ++i)
    out.push_back(EqMapElement::basis_term(self, a, i));
  return out;
}

EigenKey MultiloopAlgebra::key_of(const Multidegree &a) const {
  EigenKey key(a.size());
  for (size_t k = 0; k < a.size(); ++k) {
    int r = static_cast<int>(action_.orders[k]);
    key[k] = static_cast<unsigned>(((a[k] % r) + r) % r);
  }
  return key;
}

const MultiloopAlgebra::JointEigenspace &MultiloopAlgebra::eigenspace(const EigenKey &key) const {
  auto it = spaces_.find(key);
  if (it == spaces_.end())
    throw Error("eigenspace key out of range");
  return it->second;
}

EigenKey MultiloopAlgebra::add_keys(const EigenKey &a, const EigenKey &b) const {
  EigenKey out(a.size());
  for (size_t k = 0; k < a.size(); ++k)
    out[k] = (a[k] + b[k]) % action_.orders[k];
  return out;
}

const std::vector<CycloField::Coeffs> &MultiloopAlgebra::bracket_tensor(const EigenKey &ka, const EigenKey &kb,
                                                                        size_t i, size_t j) const {
  const auto &tensor = brackets_.at(std::make_pair(ka, kb));
  size_t dim_b = eigenspace(kb).basis.rows();
  return tensor[i * dim_b + j];
}

LieAlgebra::Vec MultiloopAlgebra::to_ambient(const EigenKey &key, const std::vector<CycloField::Coeffs> &coords) const {
  const auto &sp = eigenspace(key);
  const auto &f = *field();
  if (coords.size() != sp.basis.rows())
    throw Error("eigen coordinate vector has wrong length");
  LieAlgebra::Vec out = algebra_.zero_vec();
  for (size_t i = 0; i < coords.size(); ++i) {
    if (f.is_zero(coords[i]))
      continue;
    for (size_t c0 = 0; c0 < algebra_.dim(); ++c0)
      f.addmul_inplace(out[c0], coords[i], sp.basis.at(i, c0));
  }
  return out;
}

std::vector<CycloField::Coeffs> MultiloopAlgebra::to_eigen(const EigenKey &key, const LieAlgebra::Vec &x) const {
  const auto &sp = eigenspace(key);
  const auto &f = *field();
  // canonical nullspace rows have unit entries at their free columns, so
  // coordinates can be read off directly; membership is then verified.
  std::vector<CycloField::Coeffs> coords(sp.basis.rows());
  for (size_t i = 0; i < sp.basis.rows(); ++i)
    coords[i] = x[sp.free_cols[i]];
  LieAlgebra::Vec back = to_ambient(key, coords);
  for (size_t c0 = 0; c0 < algebra_.dim(); ++c0) {
    auto diff = back[c0];
    f.sub_inplace(diff, x[c0]);
    if (!f.is_zero(diff))
      throw Error("vector lies outside the joint eigenspace for its degree");
  }
  return coords;
}

// ---------------------------------------------------------------------------
// EqMapElement

EqMapElement::EqMapElement(MultiloopPtr parent) : parent_(std::move(parent)) {}

EqMapElement EqMapElement::term(MultiloopPtr parent, const Multidegree &a,
                                std::vector<CycloField::Coeffs> eigen_coords) {
  EqMapElement e(parent);
  if (a.size() != parent->rank())
    throw Error("multidegree arity mismatch");
  check_degree_cap(a);
  auto key = parent->key_of(a);
  if (eigen_coords.size() != parent->eigen_dim(key))
    throw Error("eigen coordinate vector has wrong length for degree " + md_str(a));
  bool zero = true;
  for (const auto &c : eigen_coords)
    if (!parent->field()->is_zero(c)) {
      zero = false;
      break;
    }
  if (!zero)
    e.terms_.emplace(a, std::move(eigen_coords));
  return e;
}

EqMapElement EqMapElement::term_ambient(MultiloopPtr parent, const Multidegree &a, const LieAlgebra::Vec &x) {
  auto key = parent->key_of(a);
  return term(parent, a, parent->to_eigen(key, x));
}

EqMapElement EqMapElement::basis_term(MultiloopPtr parent, const Multidegree &a, size_t i) {
  auto key = parent->key_of(a);
  std::vector<CycloField::Coeffs> coords(parent->eigen_dim(key), parent->field()->zero());
  coords.at(i) = parent->field()->one();
  return term(parent, a, std::move(coords));
}

void EqMapElement::check_same_parent(const EqMapElement &o) const {
  if (parent_.get() != o.parent_.get())
    throw MixedParents("elements belong to different multiloop algebras");
}

void EqMapElement::add_to(const Multidegree &a, const std::vector<CycloField::Coeffs> &coords, bool negate) {
  const auto &f = *parent_->field();
  auto it = terms_.find(a);
  if (it == terms_.end())
    it = terms_.emplace(a, std::vector<CycloField::Coeffs>(coords.size(), f.zero())).first;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (negate)
      f.sub_inplace(it->second[i], coords[i]);
    else
      f.add_inplace(it->second[i], coords[i]);
  }
  bool zero = true;
  for (const auto &c : it->second)
    if (!f.is_zero(c)) {
      zero = false;
      break;
    }
  if (zero)
    terms_.erase(it);
}

EqMapElement EqMapElement::operator+(const EqMapElement &o) const {
  check_same_parent(o);
  EqMapElement out = *this;
  for (const auto &[a, coords] : o.terms_)
    out.add_to(a, coords, false);
  return out;
}

EqMapElement EqMapElement::operator-(const EqMapElement &o) const {
  check_same_parent(o);
  EqMapElement out = *this;
  for (const auto &[a, coords] : o.terms_)
    out.add_to(a, coords, true);
  return out;
}

EqMapElement EqMapElement::scaled(const Scalar &c) const {
  EqMapElement out(parent_);
  if (c.is_zero())
    return out;
  const auto &f = *parent_->field();
  for (const auto &[a, coords] : terms_) {
    auto scaled = coords;
    for (auto &x : scaled)
      x = f.mul(x, c.coeffs());
    out.terms_.emplace(a, std::move(scaled));
  }
  return out;
}

EqMapElement EqMapElement::bracket(const EqMapElement &o) const {
  check_same_parent(o);
  const auto &f = *parent_->field();
  EqMapElement out(parent_);
  for (const auto &[a, ca] : terms_) {
    auto ka = parent_->key_of(a);
    for (const auto &[b, cb] : o.terms_) {
      auto kb = parent_->key_of(b);
      Multidegree c = md_add(a, b);
      check_degree_cap(c);
      auto kc = parent_->key_of(c);
      std::vector<CycloField::Coeffs> acc(parent_->eigen_dim(kc), f.zero());
      for (size_t i = 0; i < ca.size(); ++i) {
        if (f.is_zero(ca[i]))
          continue;
        for (size_t j = 0; j < cb.size(); ++j) {
          if (f.is_zero(cb[j]))
            continue;
          auto w = f.mul(ca[i], cb[j]);
          const auto &tensor = parent_->bracket_tensor(ka, kb, i, j);
          for (size_t l = 0; l < acc.size(); ++l) {
            if (f.is_zero(tensor[l]))
              continue;
            f.addmul_inplace(acc[l], w, tensor[l]);
          }
        }
      }
      out.add_to(c, acc, false);
    }
  }
  return out;
}

LieAlgebra::Vec EqMapElement::ambient_term(const Multidegree &a) const {
  auto it = terms_.find(a);
  if (it == terms_.end())
    return parent_->algebra().zero_vec();
  return parent_->to_ambient(parent_->key_of(a), it->second);
}

std::string EqMapElement::str() const {
  // prints in ambient coordinates, e.g. "t^(1,0)(x)e + 2*t^(0,-1)(x)h"
  if (terms_.empty())
    return "0";
  const auto &f = *parent_->field();
  const auto &L = parent_->algebra();
  std::ostringstream out;
  bool first = true;
  for (const auto &[a, coords] : terms_) {
    auto ambient = parent_->to_ambient(parent_->key_of(a), coords);
    for (size_t i = 0; i < ambient.size(); ++i) {
      if (f.is_zero(ambient[i]))
        continue;
      if (!first)
        out << " + ";
      first = false;
      std::string c = f.to_string(ambient[i]);
      if (c != "1") {
        if (f.is_rational(ambient[i]))
          out << c << "*";
        else
          out << "(" << c << ")*";
      }
      out << "t^" << md_str(a) << "(x)" << L.basis_name(i);
    }
  }
  return out.str();
}

} // namespace mloop
