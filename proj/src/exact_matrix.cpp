#include "mloop/exact_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "mloop/errors.hpp"

namespace mloop {

ExactMatrix::ExactMatrix(FieldPtr field, size_t rows, size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(rows * cols, field_->zero()) {}

void ExactMatrix::set(size_t i, size_t j, const Scalar &v) {
  if (v.field().get() != field_.get())
    throw Error("matrix entry from a different field");
  at(i, j) = v.coeffs();
}

void ExactMatrix::set(size_t i, size_t j, long v) { at(i, j) = field_->from_int(v); }

void ExactMatrix::set(size_t i, size_t j, const Rational &v) { at(i, j) = field_->from_rational(v); }

ExactMatrix ExactMatrix::identity(FieldPtr field, size_t n) {
  ExactMatrix m(field, n, n);
  for (size_t i = 0; i < n; ++i)
    m.at(i, i) = m.field_->one();
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix &o) const {
  if (cols_ != o.rows_)
    throw Error("matrix product dimension mismatch");
  ExactMatrix out(field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Entry &a = at(i, k);
      if (field_->is_zero(a))
        continue;
      for (size_t j = 0; j < o.cols_; ++j)
        field_->addmul_inplace(out.at(i, j), a, o.at(k, j));
    }
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error("matrix difference dimension mismatch");
  ExactMatrix out = *this;
  for (size_t idx = 0; idx < e_.size(); ++idx)
    field_->sub_inplace(out.e_[idx], o.e_[idx]);
  return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error("matrix sum dimension mismatch");
  ExactMatrix out = *this;
  for (size_t idx = 0; idx < e_.size(); ++idx)
    field_->add_inplace(out.e_[idx], o.e_[idx]);
  return out;
}

bool ExactMatrix::operator==(const ExactMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    return false;
  for (size_t idx = 0; idx < e_.size(); ++idx)
    if (!field_->equal(e_[idx], o.e_[idx]))
      return false;
  return true;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix out(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      out.at(j, i) = at(i, j);
  return out;
}

std::vector<ExactMatrix::Entry> ExactMatrix::apply(const std::vector<Entry> &x) const {
  if (x.size() != cols_)
    throw Error("matrix-vector dimension mismatch");
  std::vector<Entry> out(rows_, field_->zero());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      if (field_->is_zero(at(i, j)) || field_->is_zero(x[j]))
        continue;
      field_->addmul_inplace(out[i], at(i, j), x[j]);
    }
  return out;
}

bool ExactMatrix::is_zero() const {
  for (const auto &c : e_)
    if (!field_->is_zero(c))
      return false;
  return true;
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_)
    return false;
  return *this == identity(field_, rows_);
}

std::string ExactMatrix::str() const {
  std::ostringstream out;
  for (size_t i = 0; i < rows_; ++i) {
    out << "[";
    for (size_t j = 0; j < cols_; ++j) {
      if (j)
        out << ", ";
      out << field_->to_string(at(i, j));
    }
    out << "]\n";
  }
  return out.str();
}

size_t ExactMatrix::rank() const { return rref().pivots.size(); }

RrefResult ExactMatrix::rref() const {
  ExactMatrix m = *this;
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < cols_ && row < rows_; ++col) {
    size_t pivot = rows_;
    for (size_t r = row; r < rows_; ++r) {
      if (!field_->is_zero(m.at(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows_)
      continue;
    if (pivot != row)
      for (size_t j = 0; j < cols_; ++j)
        std::swap(m.at(pivot, j), m.at(row, j));
    Entry inv = field_->inverse(m.at(row, col));
    for (size_t j = col; j < cols_; ++j)
      m.at(row, j) = field_->mul(m.at(row, j), inv);
    for (size_t r = 0; r < rows_; ++r) {
      if (r == row || field_->is_zero(m.at(r, col)))
        continue;
      Entry factor = m.at(r, col);
      for (size_t j = col; j < cols_; ++j)
        field_->submul_inplace(m.at(r, j), factor, m.at(row, j));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

MatrixKernel ExactMatrix::rank_nullspace() const {
  RrefResult r = rref();
  size_t rank = r.pivots.size();
  std::vector<size_t> free_cols;
  {
    size_t p = 0;
    for (size_t c = 0; c < cols_; ++c) {
      if (p < rank && r.pivots[p] == c)
        ++p;
      else
        free_cols.push_back(c);
    }
  }
  ExactMatrix basis(field_, free_cols.size(), cols_);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    size_t fc = free_cols[k];
    basis.at(k, fc) = field_->one();
    for (size_t p = 0; p < rank; ++p) {
      // pivot variable = -entry of rref at (p, fc)
      Entry v = r.mat.at(p, fc);
      field_->negate_inplace(v);
      basis.at(k, r.pivots[p]) = std::move(v);
    }
  }
  return {rank, std::move(basis)};
}

std::optional<LinearSolution> ExactMatrix::solve(const std::vector<Entry> &b) const {
  if (b.size() != rows_)
    throw Error("solve: right-hand side has wrong length");
  ExactMatrix aug(field_, rows_, cols_ + 1);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j)
      aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  RrefResult r = aug.rref();
  for (size_t p = 0; p < r.pivots.size(); ++p)
    if (r.pivots[p] == cols_)
      return std::nullopt; // inconsistent
  std::vector<Entry> x(cols_, field_->zero());
  for (size_t p = 0; p < r.pivots.size(); ++p)
    x[r.pivots[p]] = r.mat.at(p, cols_);
  MatrixKernel k = rank_nullspace();
  return LinearSolution{std::move(x), std::move(k.basis)};
}

// ---------------------------------------------------------------------------
// RrefAccumulator

RrefAccumulator::RrefAccumulator(FieldPtr field, size_t cols) : field_(std::move(field)), cols_(cols) {}

void RrefAccumulator::reduce_forward(Row &row) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const auto &c = row[pivots_[r]];
    if (field_->is_zero(c))
      continue;
    auto factor = c;
    const Row &base = rows_[r];
    for (size_t j = pivots_[r]; j < cols_; ++j) {
      if (field_->is_zero(base[j]))
        continue;
      field_->submul_inplace(row[j], factor, base[j]);
    }
  }
}

bool RrefAccumulator::insert(Row row) {
  if (row.size() != cols_)
    throw Error("accumulator row has wrong length");
  finalized_ = false;
  reduce_forward(row);
  size_t lead = cols_;
  for (size_t j = 0; j < cols_; ++j) {
    if (!field_->is_zero(row[j])) {
      lead = j;
      break;
    }
  }
  if (lead == cols_)
    return false;
  // normalise and insert keeping pivot columns strictly increasing
  auto inv = field_->inverse(row[lead]);
  for (size_t j = lead; j < cols_; ++j)
    if (!field_->is_zero(row[j]))
      row[j] = field_->mul(row[j], inv);
  auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  rows_.insert(rows_.begin() + pos, std::move(row));
  return true;
}

RrefAccumulator::Row RrefAccumulator::residual(Row row) const {
  if (row.size() != cols_)
    throw Error("accumulator row has wrong length");
  reduce_forward(row);
  return row;
}

void RrefAccumulator::finalize() {
  if (finalized_)
    return;
  // eliminate pivot columns from the rows above them
  for (size_t r = rows_.size(); r-- > 0;) {
    for (size_t above = 0; above < r; ++above) {
      auto &target = rows_[above];
      const auto &c = target[pivots_[r]];
      if (field_->is_zero(c))
        continue;
      auto factor = c;
      const Row &base = rows_[r];
      for (size_t j = pivots_[r]; j < cols_; ++j) {
        if (field_->is_zero(base[j]))
          continue;
        field_->submul_inplace(target[j], factor, base[j]);
      }
    }
  }
  finalized_ = true;
}

std::vector<RrefAccumulator::Row> RrefAccumulator::nullspace() const {
  if (!finalized_)
    throw std::logic_error("nullspace requires finalize()");
  std::vector<size_t> free_cols;
  {
    size_t p = 0;
    for (size_t c = 0; c < cols_; ++c) {
      if (p < pivots_.size() && pivots_[p] == c)
        ++p;
      else
        free_cols.push_back(c);
    }
  }
  std::vector<Row> basis;
  basis.reserve(free_cols.size());
  for (size_t fc : free_cols) {
    Row v(cols_, field_->zero());
    v[fc] = field_->one();
    for (size_t p = 0; p < pivots_.size(); ++p) {
      auto entry = rows_[p][fc];
      field_->negate_inplace(entry);
      v[pivots_[p]] = std::move(entry);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace mloop
