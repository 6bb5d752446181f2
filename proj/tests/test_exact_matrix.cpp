#include <doctest.h>

#include <algorithm>
#include <random>

#include "mloop/exact_matrix.hpp"

using namespace mloop;

namespace {

ExactMatrix from_ints(const FieldPtr &f, std::vector<std::vector<long>> rows) {
  ExactMatrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m.set(i, j, rows[i][j]);
  return m;
}

} // namespace

TEST_CASE("rank and nullspace on small known matrices") {
  auto f = CycloField::rationals();

  auto zero = ExactMatrix(f, 2, 2);
  auto kz = zero.rank_nullspace();
  CHECK(kz.rank == 0);
  CHECK(kz.basis.rows() == 2);

  auto id = ExactMatrix::identity(f, 3);
  auto ki = id.rank_nullspace();
  CHECK(ki.rank == 3);
  CHECK(ki.basis.rows() == 0);

  auto rep = from_ints(f, {{1, 1}, {1, 1}});
  auto kr = rep.rank_nullspace();
  CHECK(kr.rank == 1);
  REQUIRE(kr.basis.rows() == 1);
  // canonical form: unit in the free column, so (-1, 1) spanning (1, -1)
  CHECK(kr.basis.get(0, 0) == Scalar(f, -1L));
  CHECK(kr.basis.get(0, 1) == Scalar(f, 1L));

  // empty matrix
  auto empty = ExactMatrix(f, 0, 0);
  CHECK(empty.rank_nullspace().rank == 0);
}

TEST_CASE("solve: identity, inconsistent, rational division") {
  auto f = CycloField::rationals();

  auto id = ExactMatrix::identity(f, 2);
  std::vector<CycloField::Coeffs> b{f->from_int(3), f->from_int(-4)};
  auto sol = id.solve(b);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == b);

  auto zero = ExactMatrix(f, 2, 2);
  CHECK_FALSE(zero.solve(b).has_value());

  auto two = from_ints(f, {{2}});
  auto s = two.solve({f->from_int(1)});
  REQUIRE(s.has_value());
  CHECK(Scalar(f, s->particular[0]) == Scalar(f, Rational(1, 2)));
}

TEST_CASE("rank is invariant under row permutation") {
  auto f = CycloField::rationals();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> entry(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    size_t rows = 4, cols = 5;
    std::vector<std::vector<long>> data(rows, std::vector<long>(cols));
    for (auto &r : data)
      for (auto &x : r)
        x = entry(rng);
    auto m = from_ints(f, data);
    std::shuffle(data.begin(), data.end(), rng);
    auto p = from_ints(f, data);
    CHECK(m.rank() == p.rank());
  }
}

TEST_CASE("solve residual holds exactly on random consistent systems") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<long> entry(-5, 5);
  std::uniform_int_distribution<size_t> dim(1, 8);
  auto f = CycloField::make(4); // exercise a genuine extension field too
  int done = 0;
  while (done < 100) {
    size_t r = dim(rng), c = dim(rng);
    ExactMatrix A(f, r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) {
        CycloField::Coeffs v(f->degree());
        for (auto &q : v)
          q = entry(rng);
        A.at(i, j) = v;
      }
    // consistent by construction: b = A x0
    std::vector<CycloField::Coeffs> x0(c);
    for (auto &q : x0) {
      CycloField::Coeffs v(f->degree());
      for (auto &t : v)
        t = entry(rng);
      q = v;
    }
    auto b = A.apply(x0);
    auto sol = A.solve(b);
    REQUIRE(sol.has_value());
    auto Ax = A.apply(sol->particular);
    for (size_t i = 0; i < r; ++i) {
      auto diff = Ax[i];
      f->sub_inplace(diff, b[i]);
      CHECK(f->is_zero(diff));
    }
    // every nullspace row maps to zero
    for (size_t k = 0; k < sol->nullspace.rows(); ++k) {
      std::vector<CycloField::Coeffs> v(c);
      for (size_t j = 0; j < c; ++j)
        v[j] = sol->nullspace.at(k, j);
      for (auto &img : A.apply(v))
        CHECK(f->is_zero(img));
    }
    ++done;
  }
}

TEST_CASE("accumulator matches batch rref and is insertion-order independent") {
  auto f = CycloField::rationals();
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    size_t rows = 10, cols = 6;
    std::vector<std::vector<long>> data(rows, std::vector<long>(cols));
    for (auto &r : data)
      for (auto &x : r)
        x = entry(rng);
    auto m = from_ints(f, data);
    auto batch = m.rank_nullspace();

    RrefAccumulator acc(f, cols);
    for (const auto &r : data) {
      RrefAccumulator::Row row(cols);
      for (size_t j = 0; j < cols; ++j)
        row[j] = f->from_int(r[j]);
      acc.insert(std::move(row));
    }
    CHECK(acc.rank() == batch.rank);
    acc.finalize();

    std::shuffle(data.begin(), data.end(), rng);
    RrefAccumulator acc2(f, cols);
    for (const auto &r : data) {
      RrefAccumulator::Row row(cols);
      for (size_t j = 0; j < cols; ++j)
        row[j] = f->from_int(r[j]);
      acc2.insert(std::move(row));
    }
    acc2.finalize();
    REQUIRE(acc2.rank() == acc.rank());
    // canonical RREF: identical basis rows regardless of insertion order
    for (size_t i = 0; i < acc.rank(); ++i)
      for (size_t j = 0; j < cols; ++j)
        CHECK(f->equal(acc.rows()[i][j], acc2.rows()[i][j]));
    // nullspace agrees with the batch computation
    auto null1 = acc.nullspace();
    REQUIRE(null1.size() == batch.basis.rows());
    for (size_t i = 0; i < null1.size(); ++i)
      for (size_t j = 0; j < cols; ++j)
        CHECK(f->equal(null1[i][j], batch.basis.at(i, j)));
  }
}
