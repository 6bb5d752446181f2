#pragma once

#include <optional>
#include <vector>

#include "mloop/cyclotomic.hpp"

namespace mloop {

class ExactMatrix;

struct RrefResult;
struct MatrixKernel;
struct LinearSolution;

/// Dense matrix over a cyclotomic-rational field. Entries are raw coefficient
/// vectors sharing one field handle; all row reduction is exact with
/// deterministic pivoting (first row with a nonzero entry in the leftmost
/// unresolved column).
class ExactMatrix {
public:
  using Entry = CycloField::Coeffs;

  ExactMatrix(FieldPtr field, size_t rows, size_t cols);

  const FieldPtr &field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Entry &at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Entry &at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  Scalar get(size_t i, size_t j) const { return Scalar(field_, at(i, j)); }
  void set(size_t i, size_t j, const Scalar &v);
  void set(size_t i, size_t j, long v);
  void set(size_t i, size_t j, const Rational &v);

  static ExactMatrix identity(FieldPtr field, size_t n);

  ExactMatrix operator*(const ExactMatrix &o) const;
  ExactMatrix operator-(const ExactMatrix &o) const;
  ExactMatrix operator+(const ExactMatrix &o) const;
  bool operator==(const ExactMatrix &o) const;
  ExactMatrix transpose() const;

  /// Matrix-vector product.
  std::vector<Entry> apply(const std::vector<Entry> &x) const;

  bool is_zero() const;
  bool is_identity() const;

  std::string str() const;

  RrefResult rref() const;

  size_t rank() const;

  /// Canonical nullspace basis derived from the reduced echelon form:
  /// one vector per free column (ascending), unit entry in that column.
  MatrixKernel rank_nullspace() const;

  /// Exact solve; std::nullopt signals b outside the column space.
  std::optional<LinearSolution> solve(const std::vector<Entry> &b) const;

private:
  FieldPtr field_;
  size_t rows_, cols_;
  std::vector<Entry> e_;
};

struct RrefResult {
  ExactMatrix mat;            // reduced row echelon form
  std::vector<size_t> pivots; // pivot column per pivot row
};

struct MatrixKernel {
  size_t rank;
  ExactMatrix basis; // nullity x cols, rows are the basis vectors
};

struct LinearSolution {
  std::vector<CycloField::Coeffs> particular; // one solution x with A x = b
  ExactMatrix nullspace;                      // rows span the homogeneous solutions
};

/// Incremental canonical row-space accumulator: rows are inserted one at a
/// time and reduced against the current echelon basis. After finalize() the
/// stored basis is the unique RREF of the row space, so results do not
/// depend on insertion order.
class RrefAccumulator {
public:
  using Row = std::vector<CycloField::Coeffs>;

  RrefAccumulator(FieldPtr field, size_t cols);

  size_t cols() const { return cols_; }
  size_t rank() const { return rows_.size(); }

  /// Reduces `row` against the basis; absorbs the remainder if nonzero.
  /// Returns true when the rank grew.
  bool insert(Row row);

  /// Reduces a copy of `row` against the basis without inserting.
  Row residual(Row row) const;

  /// Back-substitutes to the unique reduced echelon basis.
  void finalize();

  /// Canonical nullspace basis (requires finalize()).
  std::vector<Row> nullspace() const;

  const std::vector<Row> &rows() const { return rows_; }
  const std::vector<size_t> &pivot_cols() const { return pivots_; }

private:
  void reduce_forward(Row &row) const;

  FieldPtr field_;
  size_t cols_;
  bool finalized_ = false;
  std::vector<Row> rows_;      // echelon, pivot columns strictly increasing
  std::vector<size_t> pivots_; // pivot column of each row
};

} // namespace mloop
