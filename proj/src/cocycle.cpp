#include "mloop/cocycle.hpp"

#include <algorithm>
#include <sstream>

#include "mloop/cohomology.hpp"
#include "mloop/errors.hpp"

namespace mloop {

// ---------------------------------------------------------------------------
// CocycleValue

CocycleValue::CocycleValue(MultiloopPtr parent) : parent_(std::move(parent)) {}

size_t CocycleValue::coord_len(const Multidegree &m) const {
  return omegabar_invariant_dim(parent_->action(), m) * parent_->universal_form().dim_v();
}

void CocycleValue::accumulate(const Multidegree &m, const std::vector<CycloField::Coeffs> &coords, bool negate) {
  const auto &f = *parent_->field();
  if (coords.size() != coord_len(m))
    throw Error("cocycle value has wrong coordinate length at weight " + md_str(m));
  if (coords.empty())
    return;
  auto it = weights_.find(m);
  if (it == weights_.end())
    it = weights_.emplace(m, std::vector<CycloField::Coeffs>(coords.size(), f.zero())).first;
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
    weights_.erase(it);
}

CocycleValue CocycleValue::operator+(const CocycleValue &o) const {
  if (parent_.get() != o.parent_.get())
    throw MixedParents("cocycle values from different algebras");
  CocycleValue out = *this;
  for (const auto &[m, coords] : o.weights_)
    out.accumulate(m, coords);
  return out;
}

CocycleValue CocycleValue::operator-(const CocycleValue &o) const {
  if (parent_.get() != o.parent_.get())
    throw MixedParents("cocycle values from different algebras");
  CocycleValue out = *this;
  for (const auto &[m, coords] : o.weights_)
    out.accumulate(m, coords, true);
  return out;
}

std::string CocycleValue::str() const {
  if (weights_.empty())
    return "0";
  const auto &f = *parent_->field();
  std::ostringstream out;
  bool first = true;
  for (const auto &[m, coords] : weights_) {
    if (!first)
      out << "; ";
    first = false;
    out << "weight " << md_str(m) << ": [";
    for (size_t i = 0; i < coords.size(); ++i) {
      if (i)
        out << ", ";
      out << f.to_string(coords[i]);
    }
    out << "]";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// VValuedOneForm

VValuedOneForm::VValuedOneForm(MultiloopPtr parent) : parent_(std::move(parent)) {}

void VValuedOneForm::accumulate(const Multidegree &a, size_t dir, const std::vector<CycloField::Coeffs> &v,
                                bool negate) {
  const auto &f = *parent_->field();
  auto key = std::make_pair(a, dir);
  auto it = terms_.find(key);
  if (it == terms_.end())
    it = terms_.emplace(key, std::vector<CycloField::Coeffs>(v.size(), f.zero())).first;
  for (size_t i = 0; i < v.size(); ++i) {
    if (negate)
      f.sub_inplace(it->second[i], v[i]);
    else
      f.add_inplace(it->second[i], v[i]);
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

// ---------------------------------------------------------------------------
// evaluation helpers

namespace {

using VCoords = std::vector<CycloField::Coeffs>;

bool vcoords_zero(const CycloField &f, const VCoords &v) {
  for (const auto &c : v)
    if (!f.is_zero(c))
      return false;
  return true;
}

// unreduced weight component: matrix U[direction][v-coordinate]
using UnreducedWeight = std::vector<VCoords>;

struct UnreducedValue {
  std::map<Multidegree, UnreducedWeight> weights;
};

// accumulates kappa(xi, d eta) into the unreduced table
void accumulate_kappa_d(const EqMapElement &xi, const EqMapElement &eta, UnreducedValue &out) {
  const auto &M = *xi.parent();
  const auto &f = *M.field();
  const auto &uform = M.universal_form();
  size_t n = M.rank();
  size_t dv = uform.dim_v();
  for (const auto &[a, ca] : xi.terms()) {
    auto x = M.to_ambient(M.key_of(a), ca);
    for (const auto &[b, cb] : eta.terms()) {
      auto y = M.to_ambient(M.key_of(b), cb);
      auto kap = uform.kappa(x, y);
      if (vcoords_zero(f, kap))
        continue;
      Multidegree w = md_add(a, b);
      auto it = out.weights.find(w);
      if (it == out.weights.end())
        it = out.weights.emplace(w, UnreducedWeight(n, VCoords(dv, f.zero()))).first;
      for (size_t k = 0; k < n; ++k) {
        if (b[k] == 0)
          continue;
        auto factor = f.from_int(b[k]);
        for (size_t v = 0; v < dv; ++v)
          f.addmul_inplace(it->second[k][v], factor, kap[v]);
      }
    }
  }
}

// checks that the unreduced weight component is fixed by every Delta
// generator, acting by the monomial character on the form part and by the
// induced automorphism action on V
void check_equivariance(const MultiloopAlgebra &M, const Multidegree &w, const UnreducedWeight &U) {
  const auto &f = *M.field();
  size_t n = M.rank();
  size_t dv = M.universal_form().dim_v();
  for (size_t k = 0; k < n; ++k) {
    std::vector<unsigned> delta(n, 0);
    delta[k] = 1;
    auto chi = M.action().character(delta, w);
    const auto &rho = M.v_action(k);
    for (size_t dir = 0; dir < n; ++dir) {
      for (size_t u = 0; u < dv; ++u) {
        auto transformed = f.zero();
        for (size_t v = 0; v < dv; ++v) {
          if (f.is_zero(rho.at(u, v)) || f.is_zero(U[dir][v]))
            continue;
          f.addmul_inplace(transformed, rho.at(u, v), U[dir][v]);
        }
        transformed = f.mul(transformed, chi.coeffs());
        f.sub_inplace(transformed, U[dir][u]);
        if (!f.is_zero(transformed))
          throw Error("cocycle value is not Delta-equivariant at weight " + md_str(w));
      }
    }
  }
}

// quotient reduction of one weight component; returns the coordinates laid
// out omega-major, or an empty vector when the invariant target there is 0
VCoords reduce_weight(const MultiloopAlgebra &M, const Multidegree &w, const UnreducedWeight &U) {
  const auto &f = *M.field();
  size_t n = M.rank();
  size_t dv = M.universal_form().dim_v();
  check_equivariance(M, w, U);
  if (!M.action().weight_invariant(w)) {
    // non-invariant weights must carry no value at all
    for (const auto &row : U)
      if (!vcoords_zero(f, row))
        throw Error("nonzero cocycle value at non-invariant weight " + md_str(w));
    return {};
  }
  size_t drop = reduction_drop_index(w);
  VCoords out;
  if (drop == n) {
    out.reserve(n * dv);
    for (size_t dir = 0; dir < n; ++dir)
      for (size_t v = 0; v < dv; ++v)
        out.push_back(U[dir][v]);
    return out;
  }
  auto inv_md = f.inverse(f.from_int(w[drop]));
  out.reserve((n - 1) * dv);
  for (size_t dir = 0; dir < n; ++dir) {
    if (dir == drop)
      continue;
    for (size_t v = 0; v < dv; ++v) {
      auto ratio = f.mul(U[drop][v], inv_md);
      auto red = U[dir][v];
      f.submul_inplace(red, ratio, f.from_int(w[dir]));
      out.push_back(std::move(red));
    }
  }
  return out;
}

} // namespace

CocycleValue universal_cocycle(const EqMapElement &xi, const EqMapElement &eta) {
  if (xi.parent().get() != eta.parent().get())
    throw MixedParents("cocycle arguments from different algebras");
  const auto &M = *xi.parent();
  const auto &f = *M.field();
  UnreducedValue raw;
  accumulate_kappa_d(xi, eta, raw);
  CocycleValue out(xi.parent());
  for (const auto &[w, U] : raw.weights) {
    auto coords = reduce_weight(M, w, U);
    if (coords.empty() || std::all_of(coords.begin(), coords.end(), [&](const auto &c) { return f.is_zero(c); }))
      continue;
    out.accumulate(w, coords);
  }
  return out;
}

VValuedOneForm kappa_pairing_with_d(const EqMapElement &xi, const EqMapElement &eta) {
  if (xi.parent().get() != eta.parent().get())
    throw MixedParents("cocycle arguments from different algebras");
  const auto &M = *xi.parent();
  const auto &f = *M.field();
  VValuedOneForm out(xi.parent());
  UnreducedValue raw;
  accumulate_kappa_d(xi, eta, raw);
  for (const auto &[w, U] : raw.weights)
    for (size_t k = 0; k < M.rank(); ++k)
      if (!vcoords_zero(f, U[k]))
        out.accumulate(w, k, U[k]);
  return out;
}

VValuedOneForm cocycle_antisymmetry_witness(const EqMapElement &xi, const EqMapElement &eta) {
  if (xi.parent().get() != eta.parent().get())
    throw MixedParents("cocycle arguments from different algebras");
  const auto &M = *xi.parent();
  const auto &f = *M.field();
  const auto &uform = M.universal_form();
  size_t n = M.rank();

  VValuedOneForm out(xi.parent());
  UnreducedValue raw;
  accumulate_kappa_d(xi, eta, raw); // kappa(xi, d eta)
  accumulate_kappa_d(eta, xi, raw); // + kappa(eta, d xi)
  for (const auto &[w, U] : raw.weights)
    for (size_t k = 0; k < n; ++k)
      if (!vcoords_zero(f, U[k]))
        out.accumulate(w, k, U[k]);

  // - d kappa(xi, eta): kappa(xi, eta) is the V-valued polynomial with
  // coefficient kappa(x, y) at degree a + b; d multiplies by the exponents
  for (const auto &[a, ca] : xi.terms()) {
    auto x = M.to_ambient(M.key_of(a), ca);
    for (const auto &[b, cb] : eta.terms()) {
      auto y = M.to_ambient(M.key_of(b), cb);
      auto kap = uform.kappa(x, y);
      if (vcoords_zero(f, kap))
        continue;
      Multidegree w = md_add(a, b);
      for (size_t k = 0; k < n; ++k) {
        if (w[k] == 0)
          continue;
        auto scaled = kap;
        for (auto &c : scaled)
          c = f.mul(c, f.from_int(w[k]));
        out.accumulate(w, k, scaled, true);
      }
    }
  }
  return out;
}

CocycleValue cocycle_defect(const EqMapElement &xi, const EqMapElement &eta, const EqMapElement &zeta) {
  auto a = universal_cocycle(xi.bracket(eta), zeta);
  auto b = universal_cocycle(eta.bracket(zeta), xi);
  auto c = universal_cocycle(zeta.bracket(xi), eta);
  return a + b + c;
}

std::vector<CycloField::Coeffs> universal_cocycle_pair_coords(const MultiloopAlgebra &M, const Multidegree &a,
                                                              size_t i, const Multidegree &b, size_t j) {
  const auto &f = *M.field();
  const auto &uform = M.universal_form();
  size_t n = M.rank();
  size_t dv = uform.dim_v();
  const auto &sa = M.eigenspace(M.key_of(a));
  const auto &sb = M.eigenspace(M.key_of(b));
  LieAlgebra::Vec x(M.algebra().dim()), y(M.algebra().dim());
  for (size_t c0 = 0; c0 < x.size(); ++c0) {
    x[c0] = sa.basis.at(i, c0);
    y[c0] = sb.basis.at(j, c0);
  }
  auto kap = uform.kappa(x, y);
  Multidegree w = md_add(a, b);
  UnreducedWeight U(n, VCoords(dv, f.zero()));
  for (size_t k = 0; k < n; ++k) {
    if (b[k] == 0)
      continue;
    auto factor = f.from_int(b[k]);
    for (size_t v = 0; v < dv; ++v)
      f.addmul_inplace(U[k][v], factor, kap[v]);
  }
  return reduce_weight(M, w, U);
}

// ---------------------------------------------------------------------------
// factorization through the universal cocycle

bool cochain_is_cocycle(const WindowBasis &window, const CochainMatrix &psi) {
  const auto &f = *window.parent()->field();
  if (psi.values.size() != window.pairs().size())
    throw Error("cochain has wrong value count for its window");
  bool ok = true;
  for_each_cocycle_condition(window, [&](const std::map<size_t, CycloField::Coeffs> &row) {
    if (!ok)
      return;
    auto acc = f.zero();
    for (const auto &[idx, coeff] : row)
      f.addmul_inplace(acc, coeff, psi.values[idx]);
    if (!f.is_zero(acc))
      ok = false;
  });
  return ok;
}

FactorizationResult factor_through_universal(const WindowBasis &window, const CochainMatrix &psi) {
  if (!cochain_is_cocycle(window, psi))
    throw NotACocycle("cochain violates the cocycle conditions on its window");
  const auto &M = *window.parent();
  const auto &f = *M.field();
  const auto &w = window.weight();
  size_t tdim = omegabar_invariant_dim(M.action(), w) * M.universal_form().dim_v();
  auto wkey = M.key_of(w);
  size_t bdim = M.eigen_dim(wkey);
  size_t unknowns = tdim + bdim;
  const auto &pairs = window.pairs();

  FactorizationResult result;
  if (unknowns == 0) {
    bool zero = true;
    for (const auto &v : psi.values)
      if (!f.is_zero(v)) {
        zero = false;
        break;
      }
    result.factored = zero;
    return result;
  }

  ExactMatrix sys(M.field(), pairs.size(), unknowns);
  std::vector<CycloField::Coeffs> rhs(pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p) {
    auto [A, B] = pairs[p];
    const auto &ea = window.elements()[A];
    const auto &eb = window.elements()[B];
    auto omega = universal_cocycle_pair_coords(M, ea.degree, ea.index, eb.degree, eb.index);
    for (size_t t = 0; t < omega.size(); ++t)
      sys.at(p, t) = omega[t];
    const auto &tensor = M.bracket_tensor(M.key_of(ea.degree), M.key_of(eb.degree), ea.index, eb.index);
    for (size_t l = 0; l < bdim; ++l)
      sys.at(p, tdim + l) = tensor[l];
    rhs[p] = psi.values[p];
  }
  auto sol = sys.solve(rhs);
  if (!sol) {
    result.factored = false;
    return result;
  }
  result.factored = true;
  result.phi.assign(sol->particular.begin(), sol->particular.begin() + tdim);
  result.one_cochain.assign(sol->particular.begin() + tdim, sol->particular.end());
  for (const auto &c : result.phi)
    if (!f.is_zero(c)) {
      result.phi_nonzero = true;
      break;
    }
  return result;
}

} // namespace mloop
