#include "mloop/lie_algebra.hpp"

#include <sstream>

#include "mloop/errors.hpp"

namespace mloop {

// ---------------------------------------------------------------------------
// LieAlgebra

LieAlgebra LieAlgebra::from_structure_constants(FieldPtr field,
                                                std::vector<std::vector<std::vector<Scalar>>> constants,
                                                std::string name, std::vector<std::string> basis_names) {
  LieAlgebra L;
  L.field_ = std::move(field);
  L.dim_ = constants.size();
  L.name_ = std::move(name);
  if (basis_names.empty())
    for (size_t i = 0; i < L.dim_; ++i)
      basis_names.push_back("g" + std::to_string(i));
  if (basis_names.size() != L.dim_)
    throw ConfigError("basis name list has wrong length");
  L.basis_names_ = std::move(basis_names);
  L.c_.assign(L.dim_ * L.dim_ * L.dim_, L.field_->zero());
  for (size_t i = 0; i < L.dim_; ++i) {
    if (constants[i].size() != L.dim_)
      throw ConfigError("structure constant array is not cubic");
    for (size_t j = 0; j < L.dim_; ++j) {
      if (constants[i][j].size() != L.dim_)
        throw ConfigError("structure constant array is not cubic");
      for (size_t k = 0; k < L.dim_; ++k) {
        const Scalar &v = constants[i][j][k];
        if (v.field().get() != L.field_.get())
          throw ConfigError("structure constant from a different field");
        L.c_[(i * L.dim_ + j) * L.dim_ + k] = v.coeffs();
      }
    }
  }
  L.validate();
  return L;
}

void LieAlgebra::validate() const {
  const auto &f = *field_;
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = 0; j < dim_; ++j)
      for (size_t k = 0; k < dim_; ++k) {
        auto sum = c(i, j, k);
        f.add_inplace(sum, c(j, i, k));
        if (!f.is_zero(sum))
          throw AntisymmetryViolation("antisymmetry fails at basis pair (" + std::to_string(i) + "," +
                                      std::to_string(j) + "), component " + std::to_string(k));
      }
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = i + 1; j < dim_; ++j)
      for (size_t k = j + 1; k < dim_; ++k) {
        Vec s = bracket(bracket_basis(i, j), basis_vec(k));
        Vec t = bracket(bracket_basis(j, k), basis_vec(i));
        Vec u = bracket(bracket_basis(k, i), basis_vec(j));
        for (size_t l = 0; l < dim_; ++l) {
          auto sum = s[l];
          f.add_inplace(sum, t[l]);
          f.add_inplace(sum, u[l]);
          if (!f.is_zero(sum))
            throw JacobiViolation("Jacobi identity fails on basis triple (" + std::to_string(i) + "," +
                                  std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
}

LieAlgebra::Vec LieAlgebra::basis_vec(size_t i) const {
  Vec v = zero_vec();
  v[i] = field_->one();
  return v;
}

LieAlgebra::Vec LieAlgebra::bracket_basis(size_t i, size_t j) const {
  Vec out(dim_);
  for (size_t k = 0; k < dim_; ++k)
    out[k] = c(i, j, k);
  return out;
}

LieAlgebra::Vec LieAlgebra::bracket(const Vec &x, const Vec &y) const {
  Vec out = zero_vec();
  const auto &f = *field_;
  for (size_t i = 0; i < dim_; ++i) {
    if (f.is_zero(x[i]))
      continue;
    for (size_t j = 0; j < dim_; ++j) {
      if (f.is_zero(y[j]))
        continue;
      auto xy = f.mul(x[i], y[j]);
      for (size_t k = 0; k < dim_; ++k) {
        if (f.is_zero(c(i, j, k)))
          continue;
        f.addmul_inplace(out[k], xy, c(i, j, k));
      }
    }
  }
  return out;
}

ExactMatrix LieAlgebra::ad_basis(size_t i) const {
  ExactMatrix m(field_, dim_, dim_);
  for (size_t j = 0; j < dim_; ++j)
    for (size_t k = 0; k < dim_; ++k)
      m.at(k, j) = c(i, j, k);
  return m;
}

ExactMatrix LieAlgebra::killing_form() const {
  ExactMatrix K(field_, dim_, dim_);
  const auto &f = *field_;
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = i; j < dim_; ++j) {
      // trace(ad e_i ad e_j) = sum_{p,q} c[i][q][p] c[j][p][q]
      auto tr = f.zero();
      for (size_t p = 0; p < dim_; ++p)
        for (size_t q = 0; q < dim_; ++q)
          f.addmul_inplace(tr, c(i, q, p), c(j, p, q));
      K.at(i, j) = tr;
      K.at(j, i) = std::move(tr);
    }
  return K;
}

std::vector<ExactMatrix> LieAlgebra::derivations() const {
  // unknown D (dim x dim), flattened row-major: D_{l k} at l*dim + k.
  // equations, for all ordered (i,j) and components l:
  //   sum_k c[i][j][k] D_{l k} - sum_p c[p][j][l] D_{p i} - sum_q c[i][q][l] D_{q j} = 0
  const auto &f = *field_;
  size_t unknowns = dim_ * dim_;
  ExactMatrix sys(field_, dim_ * dim_ * dim_, unknowns);
  size_t row = 0;
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = 0; j < dim_; ++j)
      for (size_t l = 0; l < dim_; ++l, ++row) {
        for (size_t k = 0; k < dim_; ++k)
          f.add_inplace(sys.at(row, l * dim_ + k), c(i, j, k));
        for (size_t p = 0; p < dim_; ++p)
          f.sub_inplace(sys.at(row, p * dim_ + i), c(p, j, l));
        for (size_t q = 0; q < dim_; ++q)
          f.sub_inplace(sys.at(row, q * dim_ + j), c(i, q, l));
      }
  auto kernel = sys.rank_nullspace();
  std::vector<ExactMatrix> basis;
  basis.reserve(kernel.basis.rows());
  for (size_t r = 0; r < kernel.basis.rows(); ++r) {
    ExactMatrix D(field_, dim_, dim_);
    for (size_t l = 0; l < dim_; ++l)
      for (size_t k = 0; k < dim_; ++k)
        D.at(l, k) = kernel.basis.at(r, l * dim_ + k);
    basis.push_back(std::move(D));
  }
  return basis;
}

LieAlgebra::Vec LieAlgebra::realization_coords(const ExactMatrix &mat) const {
  if (realization_.empty())
    throw Error("algebra '" + name_ + "' carries no matrix realisation");
  size_t N = realization_[0].rows();
  if (mat.rows() != N || mat.cols() != N)
    throw Error("matrix size does not match the realisation");
  ExactMatrix sys(field_, N * N, dim_);
  for (size_t b = 0; b < dim_; ++b)
    for (size_t p = 0; p < N; ++p)
      for (size_t q = 0; q < N; ++q)
        sys.at(p * N + q, b) = realization_[b].at(p, q);
  std::vector<Coeffs> rhs(N * N);
  for (size_t p = 0; p < N; ++p)
    for (size_t q = 0; q < N; ++q)
      rhs[p * N + q] = mat.at(p, q);
  auto sol = sys.solve(rhs);
  if (!sol)
    throw Error("matrix is outside the span of the realisation basis");
  return sol->particular;
}

// ---------------------------------------------------------------------------
// presets

namespace {

// helper: build structure constants from a matrix realisation by computing
// commutators and decomposing them in the basis
LieAlgebra from_matrices(FieldPtr field, std::vector<ExactMatrix> basis, const std::string &name,
                         std::vector<std::string> basis_names) {
  size_t d = basis.size();
  size_t N = basis[0].rows();
  ExactMatrix sys(field, N * N, d);
  for (size_t b = 0; b < d; ++b)
    for (size_t p = 0; p < N; ++p)
      for (size_t q = 0; q < N; ++q)
        sys.at(p * N + q, b) = basis[b].at(p, q);
  std::vector<std::vector<std::vector<Scalar>>> c(
      d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, Scalar(field, 0L))));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      ExactMatrix comm = basis[i] * basis[j] - basis[j] * basis[i];
      std::vector<CycloField::Coeffs> rhs(N * N);
      for (size_t p = 0; p < N; ++p)
        for (size_t q = 0; q < N; ++q)
          rhs[p * N + q] = comm.at(p, q);
      auto sol = sys.solve(rhs);
      if (!sol)
        throw Error("commutator escapes the span of the matrix basis");
      for (size_t k = 0; k < d; ++k)
        c[i][j][k] = Scalar(field, sol->particular[k]);
    }
  LieAlgebra L = LieAlgebra::from_structure_constants(field, std::move(c), name, std::move(basis_names));
  return L;
}

ExactMatrix elementary(FieldPtr field, size_t N, size_t p, size_t q) {
  ExactMatrix m(field, N, N);
  m.at(p, q) = field->one();
  return m;
}

} // namespace

// realisation-aware constructor plumbing: presets fill realization_ after
// from_structure_constants validates.

LieAlgebra LieAlgebra::sl2(FieldPtr field) {
  // basis e, h, f with e = E12, h = E11 - E22, f = E21
  std::vector<ExactMatrix> basis;
  basis.push_back(elementary(field, 2, 0, 1));
  ExactMatrix h(field, 2, 2);
  h.set(0, 0, 1L);
  h.set(1, 1, -1L);
  basis.push_back(h);
  basis.push_back(elementary(field, 2, 1, 0));
  LieAlgebra L = from_matrices(field, basis, "sl2", {"e", "h", "f"});
  L.realization_ = std::move(basis);
  return L;
}

LieAlgebra LieAlgebra::sl3(FieldPtr field) {
  // basis: E12, E13, E23, E21, E31, E32, H1 = E11-E22, H2 = E22-E33
  std::vector<ExactMatrix> basis;
  basis.push_back(elementary(field, 3, 0, 1));
  basis.push_back(elementary(field, 3, 0, 2));
  basis.push_back(elementary(field, 3, 1, 2));
  basis.push_back(elementary(field, 3, 1, 0));
  basis.push_back(elementary(field, 3, 2, 0));
  basis.push_back(elementary(field, 3, 2, 1));
  ExactMatrix h1(field, 3, 3), h2(field, 3, 3);
  h1.set(0, 0, 1L);
  h1.set(1, 1, -1L);
  h2.set(1, 1, 1L);
  h2.set(2, 2, -1L);
  basis.push_back(h1);
  basis.push_back(h2);
  LieAlgebra L = from_matrices(field, basis, "sl3", {"E12", "E13", "E23", "E21", "E31", "E32", "H1", "H2"});
  L.realization_ = std::move(basis);
  return L;
}

LieAlgebra LieAlgebra::abelian(FieldPtr field, size_t dim) {
  std::vector<std::vector<std::vector<Scalar>>> c(
      dim, std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim, Scalar(field, 0L))));
  return from_structure_constants(field, std::move(c), "abelian" + std::to_string(dim));
}

LieAlgebra LieAlgebra::direct_sum(const LieAlgebra &a, const LieAlgebra &b) {
  if (a.field_.get() != b.field_.get())
    throw Error("direct sum over mismatched fields");
  FieldPtr field = a.field_;
  size_t d = a.dim_ + b.dim_;
  std::vector<std::vector<std::vector<Scalar>>> c(
      d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, Scalar(field, 0L))));
  for (size_t i = 0; i < a.dim_; ++i)
    for (size_t j = 0; j < a.dim_; ++j)
      for (size_t k = 0; k < a.dim_; ++k)
        c[i][j][k] = Scalar(field, a.c(i, j, k));
  for (size_t i = 0; i < b.dim_; ++i)
    for (size_t j = 0; j < b.dim_; ++j)
      for (size_t k = 0; k < b.dim_; ++k)
        c[a.dim_ + i][a.dim_ + j][a.dim_ + k] = Scalar(field, b.c(i, j, k));
  std::vector<std::string> names;
  for (size_t i = 0; i < a.dim_; ++i)
    names.push_back(a.basis_names_[i]);
  for (size_t i = 0; i < b.dim_; ++i)
    names.push_back(b.basis_names_[i] + "'");
  LieAlgebra L = from_structure_constants(field, std::move(c), a.name_ + "+" + b.name_, std::move(names));
  // block-diagonal realisation when both summands carry one
  if (a.has_realization() && b.has_realization()) {
    size_t Na = a.realization_size(), Nb = b.realization_size();
    for (size_t i = 0; i < d; ++i) {
      ExactMatrix m(field, Na + Nb, Na + Nb);
      if (i < a.dim_) {
        for (size_t p = 0; p < Na; ++p)
          for (size_t q = 0; q < Na; ++q)
            m.at(p, q) = a.realization_[i].at(p, q);
      } else {
        for (size_t p = 0; p < Nb; ++p)
          for (size_t q = 0; q < Nb; ++q)
            m.at(Na + p, Na + q) = b.realization_[i - a.dim_].at(p, q);
      }
      L.realization_.push_back(std::move(m));
    }
  }
  return L;
}

LieAlgebra LieAlgebra::preset(const std::string &name, FieldPtr field) {
  if (name == "sl2")
    return sl2(field);
  if (name == "sl3")
    return sl3(field);
  if (name == "sl2+sl2")
    return direct_sum(sl2(field), sl2(field));
  if (name.rfind("abelian:", 0) == 0) {
    size_t d = std::stoul(name.substr(8));
    return abelian(field, d);
  }
  throw ConfigError("unknown algebra preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// UniversalForm

size_t UniversalForm::sym_index(size_t i, size_t j) const {
  if (i > j)
    std::swap(i, j);
  // lexicographic by (i,j), i <= j: offset of row i is sum_{r<i} (dim - r)
  return i * dim_ - i * (i + 1) / 2 + j;
}

UniversalForm::UniversalForm(const LieAlgebra &L)
    : field_(L.field()), dim_(L.dim()), sym_dim_(L.dim() * (L.dim() + 1) / 2), span_(L.field(), sym_dim_) {
  const auto &f = *field_;
  auto ders = L.derivations();
  // derivation action D.(e_i . e_j) = De_i . e_j + e_i . De_j, spans the
  // subspace to quotient by
  for (const auto &D : ders) {
    for (size_t i = 0; i < dim_; ++i)
      for (size_t j = i; j < dim_; ++j) {
        RrefAccumulator::Row row(sym_dim_, f.zero());
        for (size_t l = 0; l < dim_; ++l) {
          if (!f.is_zero(D.at(l, i)))
            f.add_inplace(row[sym_index(l, j)], D.at(l, i));
          if (!f.is_zero(D.at(l, j)))
            f.add_inplace(row[sym_index(i, l)], D.at(l, j));
        }
        span_.insert(std::move(row));
      }
  }
  span_.finalize();
  // canonical complement: the non-pivot Sym^2 generators survive
  std::vector<size_t> sym_of_coord;
  coord_of_sym_.assign(sym_dim_, static_cast<size_t>(-1));
  {
    size_t p = 0;
    const auto &pivots = span_.pivot_cols();
    for (size_t s = 0; s < sym_dim_; ++s) {
      if (p < pivots.size() && pivots[p] == s) {
        ++p;
        continue;
      }
      coord_of_sym_[s] = sym_of_coord.size();
      sym_of_coord.push_back(s);
    }
  }
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = i; j < dim_; ++j)
      if (coord_of_sym_[sym_index(i, j)] != static_cast<size_t>(-1))
        free_pairs_.emplace_back(i, j);
  // kappa on the Sym^2 basis: project each generator
  kappa_.resize(sym_dim_);
  for (size_t s = 0; s < sym_dim_; ++s) {
    std::vector<CycloField::Coeffs> gen(sym_dim_, f.zero());
    gen[s] = f.one();
    kappa_[s] = project(gen);
  }
}

std::vector<CycloField::Coeffs> UniversalForm::project(const std::vector<CycloField::Coeffs> &sym2) const {
  if (sym2.size() != sym_dim_)
    throw Error("Sym^2 vector has wrong length");
  auto residual = span_.residual(sym2);
  std::vector<CycloField::Coeffs> out;
  out.reserve(dim_v());
  for (size_t s = 0; s < sym_dim_; ++s)
    if (coord_of_sym_[s] != static_cast<size_t>(-1))
      out.push_back(residual[s]);
  return out;
}

const std::vector<CycloField::Coeffs> &UniversalForm::kappa_basis(size_t i, size_t j) const {
  return kappa_[sym_index(i, j)];
}

std::vector<CycloField::Coeffs> UniversalForm::kappa(const LieAlgebra::Vec &x, const LieAlgebra::Vec &y) const {
  const auto &f = *field_;
  std::vector<CycloField::Coeffs> out(dim_v(), f.zero());
  for (size_t i = 0; i < dim_; ++i) {
    if (f.is_zero(x[i]))
      continue;
    for (size_t j = 0; j < dim_; ++j) {
      if (f.is_zero(y[j]))
        continue;
      auto xy = f.mul(x[i], y[j]);
      const auto &kb = kappa_basis(i, j);
      for (size_t v = 0; v < out.size(); ++v) {
        if (f.is_zero(kb[v]))
          continue;
        f.addmul_inplace(out[v], xy, kb[v]);
      }
    }
  }
  return out;
}

ExactMatrix UniversalForm::induced_action(const ExactMatrix &A) const {
  const auto &f = *field_;
  ExactMatrix out(field_, dim_v(), dim_v());
  for (size_t col = 0; col < dim_v(); ++col) {
    auto [i, j] = free_pairs_[col];
    // image of e_i . e_j under A x A in Sym^2 coordinates
    std::vector<CycloField::Coeffs> img(sym_dim_, f.zero());
    for (size_t p = 0; p < dim_; ++p) {
      if (f.is_zero(A.at(p, i)))
        continue;
      for (size_t q = 0; q < dim_; ++q) {
        if (f.is_zero(A.at(q, j)))
          continue;
        f.addmul_inplace(img[sym_index(p, q)], A.at(p, i), A.at(q, j));
      }
    }
    auto coords = project(img);
    for (size_t row = 0; row < dim_v(); ++row)
      out.at(row, col) = coords[row];
  }
  return out;
}

// ---------------------------------------------------------------------------
// FiniteAutomorphism

FiniteAutomorphism::FiniteAutomorphism(const LieAlgebra &L, ExactMatrix matrix, unsigned order)
    : matrix_(std::move(matrix)), order_(order) {
  const auto &f = *L.field();
  size_t d = L.dim();
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw NotAutomorphism("automorphism matrix has wrong shape");
  if (order_ == 0)
    throw OrderMismatch("automorphism order must be positive");
  // bracket preservation on basis pairs: A[e_i,e_j] = [Ae_i, Ae_j]
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j) {
      LieAlgebra::Vec lhs = matrix_.apply(L.bracket_basis(i, j));
      LieAlgebra::Vec ai(d), aj(d);
      for (size_t k = 0; k < d; ++k) {
        ai[k] = matrix_.at(k, i);
        aj[k] = matrix_.at(k, j);
      }
      LieAlgebra::Vec rhs = L.bracket(ai, aj);
      for (size_t k = 0; k < d; ++k) {
        auto diff = lhs[k];
        f.sub_inplace(diff, rhs[k]);
        if (!f.is_zero(diff))
          throw NotAutomorphism("map does not preserve the bracket at basis pair (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
      }
    }
  // A^order = 1, and order minimal among its divisors
  ExactMatrix id = ExactMatrix::identity(L.field(), d);
  ExactMatrix power = id;
  std::vector<bool> hits(order_ + 1, false);
  for (unsigned k = 1; k <= order_; ++k) {
    power = power * matrix_;
    if (power == id)
      hits[k] = true;
  }
  if (!hits[order_])
    throw OrderMismatch("matrix does not have the declared order " + std::to_string(order_));
  for (unsigned k = 1; k < order_; ++k)
    if (order_ % k == 0 && hits[k])
      throw OrderMismatch("declared order " + std::to_string(order_) + " is not minimal (A^" + std::to_string(k) +
                          " = 1)");
}

LieAlgebra::Vec FiniteAutomorphism::apply(const LieAlgebra::Vec &x) const { return matrix_.apply(x); }

FiniteAutomorphism FiniteAutomorphism::identity(const LieAlgebra &L) {
  return FiniteAutomorphism(L, ExactMatrix::identity(L.field(), L.dim()), 1);
}

FiniteAutomorphism FiniteAutomorphism::neg_transpose(const LieAlgebra &L) {
  if (!L.has_realization())
    throw ConfigError("neg_transpose needs a matrix realisation (sl2/sl3 presets)");
  FieldPtr field = L.field();
  size_t d = L.dim();
  ExactMatrix A(field, d, d);
  for (size_t j = 0; j < d; ++j) {
    ExactMatrix img = L.realization()[j].transpose();
    for (size_t p = 0; p < img.rows(); ++p)
      for (size_t q = 0; q < img.cols(); ++q)
        field->negate_inplace(img.at(p, q));
    auto coords = L.realization_coords(img);
    for (size_t i = 0; i < d; ++i)
      A.at(i, j) = coords[i];
  }
  // order 2 unless the map is the identity (never for sl_n, n >= 2)
  unsigned order = A.is_identity() ? 1 : 2;
  return FiniteAutomorphism(L, std::move(A), order);
}

FiniteAutomorphism FiniteAutomorphism::diag_conjugation(const LieAlgebra &L, unsigned q,
                                                        const std::vector<long> &exponents) {
  if (!L.has_realization())
    throw ConfigError("diag_conjugation needs a matrix realisation (sl2/sl3 presets)");
  FieldPtr field = L.field();
  if (q == 0 || field->order() % q != 0)
    throw ConfigError("field order must be a multiple of the conjugation order");
  size_t N = L.realization_size();
  if (exponents.size() != N)
    throw ConfigError("diag_conjugation needs one exponent per matrix row");
  size_t d = L.dim();
  unsigned step = field->order() / q;
  ExactMatrix g(field, N, N), ginv(field, N, N);
  for (size_t p = 0; p < N; ++p) {
    g.at(p, p) = field->zeta_pow(static_cast<long>(step) * exponents[p]);
    ginv.at(p, p) = field->zeta_pow(-static_cast<long>(step) * exponents[p]);
  }
  ExactMatrix A(field, d, d);
  for (size_t j = 0; j < d; ++j) {
    ExactMatrix img = g * L.realization()[j] * ginv;
    auto coords = L.realization_coords(img);
    for (size_t i = 0; i < d; ++i)
      A.at(i, j) = coords[i];
  }
  // minimal order of the conjugation divides q; find it
  ExactMatrix id = ExactMatrix::identity(field, d);
  ExactMatrix power = A;
  unsigned order = 1;
  while (!(power == id)) {
    power = power * A;
    ++order;
    if (order > q)
      throw OrderMismatch("conjugation order exceeds declared bound");
  }
  return FiniteAutomorphism(L, std::move(A), order);
}

// ---------------------------------------------------------------------------
// eigenspaces

std::vector<Eigenspace> automorphism_eigenspaces(const LieAlgebra &L, const FiniteAutomorphism &A) {
  FieldPtr field = L.field();
  const auto &f = *field;
  unsigned r = A.order();
  if (field->order() % r != 0)
    throw OrderMismatch("field order must be a multiple of the automorphism order");
  size_t d = L.dim();
  std::vector<Eigenspace> spaces;
  size_t total = 0;
  for (unsigned j = 0; j < r; ++j) {
    ExactMatrix shifted = A.matrix();
    auto ev = field->zeta_pow(static_cast<long>(field->order() / r) * j);
    for (size_t i = 0; i < d; ++i)
      f.sub_inplace(shifted.at(i, i), ev);
    auto kernel = shifted.rank_nullspace();
    total += kernel.basis.rows();
    spaces.push_back(Eigenspace{static_cast<long>(j), std::move(kernel.basis)});
  }
  if (total != d)
    throw NotAutomorphism("eigenspace dimensions do not sum to dim(g); eigenvalues escape <zeta_r>");
  // grading check: [g_i, g_j] lies in g_{i+j mod r}: A[x,y] = zeta^{i+j}[x,y]
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = 0; j < r; ++j) {
      auto expect = field->zeta_pow(static_cast<long>(field->order() / r) * (i + j));
      for (size_t a = 0; a < spaces[i].basis.rows(); ++a)
        for (size_t b = 0; b < spaces[j].basis.rows(); ++b) {
          LieAlgebra::Vec x(d), y(d);
          for (size_t k = 0; k < d; ++k) {
            x[k] = spaces[i].basis.at(a, k);
            y[k] = spaces[j].basis.at(b, k);
          }
          auto br = L.bracket(x, y);
          auto lhs = A.matrix().apply(br);
          for (size_t k = 0; k < d; ++k) {
            auto diff = lhs[k];
            f.submul_inplace(diff, expect, br[k]);
            if (!f.is_zero(diff))
              throw NotAutomorphism("eigenspace decomposition does not grade the bracket");
          }
        }
    }
  return spaces;
}

} // namespace mloop
