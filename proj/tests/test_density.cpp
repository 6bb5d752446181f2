#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mloop/density.hpp"
#include "mloop/errors.hpp"

using namespace mloop::density;

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

// measurement floor for spectral sup-errors in double precision: once the
// truncation error drops below this, only rounding noise is visible
constexpr double FLOOR = 1e-12;

bool decreasing_above_floor(const std::vector<double> &ladder) {
  for (size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i - 1] <= FLOOR || ladder[i] <= FLOOR) {
      if (ladder[i] > FLOOR)
        return false; // once below the floor, stay below
      continue;
    }
    if (ladder[i] >= ladder[i - 1])
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("trig polynomial catalogue entries are recovered exactly") {
  auto f = TorusFunction::lookup("trig-poly");
  REQUIRE(f.is_trig_poly());
  for (int N : {3, 4, 8}) {
    auto p = fourier_truncate(f, N);
    auto rep = ck_error(f, p, 2, 256);
    for (double e : rep.sup_errors)
      CHECK(e <= 1e-12);
  }
}

TEST_CASE("N=0 truncation of exp-sin is its mean") {
  auto f = TorusFunction::lookup("exp-sin");
  auto p = fourier_truncate(f, 0);
  double mean = p.at({0}).real();
  // quadrature mean on a fine independent grid
  double acc = 0.0;
  const int M = 4096;
  for (int m = 0; m < M; ++m)
    acc += f.value({TWO_PI * m / M});
  acc /= M;
  CHECK(std::abs(mean - acc) <= 1e-6); // N=0 uses the coarsest allowed grid
  // C0 error then equals sup |f - mean| up to the same tolerance
  auto rep = ck_error(f, p, 0, 512);
  double sup = 0.0;
  for (int m = 0; m < M; ++m)
    sup = std::max(sup, std::abs(f.value({TWO_PI * m / M}) - acc));
  CHECK(std::abs(rep.sup_errors[0] - sup) <= 1e-5);
}

TEST_CASE("spectral convergence ladder for the analytic catalogue") {
  // pinned from the first verified run (see values in the assertions):
  // exp-sin C0: 5.91e-4, 1.16e-8, then the floor
  auto f = TorusFunction::lookup("exp-sin");
  std::vector<double> c0, c1;
  for (int N : {4, 8, 16, 32, 64}) {
    auto rep = ck_error(f, fourier_truncate(f, N), 1, 512);
    c0.push_back(rep.sup_errors[0]);
    c1.push_back(rep.sup_errors[1]);
  }
  CHECK(decreasing_above_floor(c0));
  CHECK(decreasing_above_floor(c1));
  CHECK(c0[0] < 1e-3);
  CHECK(c0[0] > 1e-4); // genuine truncation error at N=4, not noise
  CHECK(c0[1] < 1e-7);
  CHECK(c0.back() <= 1e-8);
  CHECK(c0.back() <= 1e-13); // actual floor-level value
  // halving the order stays an order of magnitude apart above the floor
  for (size_t i = 0; i + 1 < c0.size(); ++i) {
    if (c0[i] <= FLOOR || c0[i + 1] <= FLOOR)
      continue;
    CHECK(c0[i + 1] < c0[i] / 10.0);
  }
}

TEST_CASE("derivative orders dominate lower ones at fixed N") {
  for (const char *id : {"exp-sin", "gauss"}) {
    auto f = TorusFunction::lookup(id);
    auto rep = ck_error(f, fourier_truncate(f, 8), 2, 256);
    CHECK(rep.sup_errors[0] <= rep.sup_errors[1]);
    CHECK(rep.sup_errors[1] <= rep.sup_errors[2]);
  }
}

TEST_CASE("grid adequacy: doubling the resolution moves sup-errors < 10%") {
  for (const char *id : {"exp-sin", "gauss"}) {
    auto f = TorusFunction::lookup(id);
    for (int N : {8, 16}) {
      auto p = fourier_truncate(f, N);
      auto a = ck_error(f, p, 0, 512);
      auto b = ck_error(f, p, 0, 1024);
      double lo = a.sup_errors[0], hi = b.sup_errors[0];
      if (hi <= FLOOR && lo <= FLOOR)
        continue;
      CHECK(std::abs(hi - lo) <= 0.1 * std::max(hi, lo));
    }
  }
}

TEST_CASE("two code paths for the derivative of a truncation agree") {
  auto f = TorusFunction::lookup("exp-sin");
  auto p = fourier_truncate(f, 12);
  // path A: quadrature coefficients of the exact derivative
  const int M = 4 * 12 + 8;
  TrigPoly pd(1, 12);
  for (int k = -12; k <= 12; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (int m = 0; m < M; ++m) {
      double theta = TWO_PI * m / M;
      acc += f.eval({1}, {theta}) * std::exp(std::complex<double>{0.0, -k * theta});
    }
    pd.at({k}) = acc / static_cast<double>(M);
  }
  // path B: coefficient-level derivative of the truncation
  auto pb = p.axis_derivative(0);
  for (int g = 0; g < 256; ++g) {
    double theta = TWO_PI * g / 256.0;
    CHECK(std::abs(pd.eval({0}, {theta}) - pb.eval({0}, {theta})) <= 1e-12);
  }
}

TEST_CASE("two-dimensional truncation converges in all C^k norms") {
  auto f = TorusFunction::lookup("exp-sin-2d");
  std::vector<double> c0;
  for (int N : {4, 8, 16}) {
    auto rep = ck_error(f, fourier_truncate(f, N), 2, 48);
    c0.push_back(rep.sup_errors[0]);
  }
  CHECK(decreasing_above_floor(c0));
  CHECK(c0.back() <= 1e-8);
}

TEST_CASE("injectivity witness: random trig polynomials stay visible on the grid") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> co(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    TrigPoly p(1, 8);
    double norm = 0.0;
    for (int k = -8; k <= 8; ++k) {
      double re = co(rng), im = co(rng);
      p.at({k}) = {re, im};
      norm += re * re + im * im;
    }
    REQUIRE(norm > 1e-6); // the draw is nonzero
    double sup = 0.0;
    for (int g = 0; g < 64; ++g) {
      double theta = TWO_PI * g / 64.0;
      sup = std::max(sup, std::abs(p.eval({0}, {theta})));
    }
    CHECK(sup > 1e-10);
  }
}

TEST_CASE("Bernstein basics: de Casteljau, derivative, antiderivative") {
  // p = B_2 with coefficients (0, 1, 0): p(x) = 2x(1-x)
  BernsteinPoly p({0.0, 1.0, 0.0});
  CHECK(p.eval(0.5) == doctest::Approx(0.5));
  CHECK(p.eval(0.25) == doctest::Approx(2 * 0.25 * 0.75));
  auto d = p.derivative();
  CHECK(d.eval(0.25) == doctest::Approx(2.0 - 4 * 0.25));
  auto a = p.antiderivative();
  CHECK(a.eval(0.0) == doctest::Approx(0.0));
  // integral of 2x(1-x) from 0 to 1 = 1/3
  CHECK(a.eval(1.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("plain Bernstein approximation converges in C0") {
  auto f = IntervalFunction::lookup("exp");
  std::vector<double> ladder;
  for (int N : {8, 16, 32, 64}) {
    auto p = weierstrass_integrate_approx(f, 0, N);
    ladder.push_back(interval_ck_errors(f, p, 0, 512)[0]);
  }
  for (size_t i = 1; i < ladder.size(); ++i)
    CHECK(ladder[i] < ladder[i - 1]);
  CHECK(ladder.back() < 2e-2);
}

TEST_CASE("quadratic catalogue entry is reproduced through integration") {
  auto f = IntervalFunction::lookup("quad");
  for (int N : {2, 4, 8}) {
    auto p = weierstrass_integrate_approx(f, 1, N);
    auto e = interval_ck_errors(f, p, 1, 256);
    CHECK(e[0] <= 1e-10);
    CHECK(e[1] <= 1e-10);
  }
}

TEST_CASE("integrated Bernstein ladder: exp with mu=2") {
  auto f = IntervalFunction::lookup("exp");
  std::vector<std::vector<double>> reports;
  for (int N : {16, 32, 64})
    reports.push_back(interval_ck_errors(f, weierstrass_integrate_approx(f, 2, N), 2, 512));
  // pinned from the first verified run: 1.367e-2, 6.839e-3, 3.421e-3
  CHECK(reports[0][2] == doctest::Approx(1.367e-2).epsilon(0.05));
  CHECK(reports[1][2] == doctest::Approx(6.839e-3).epsilon(0.05));
  CHECK(reports[2][2] == doctest::Approx(3.421e-3).epsilon(0.05));
  for (int nu = 0; nu <= 2; ++nu) {
    CHECK(reports[1][nu] < reports[0][nu]);
    CHECK(reports[2][nu] < reports[1][nu]);
  }
}

TEST_CASE("weierstrass ladder is non-increasing above the floor for every catalogue entry") {
  // extracting the mu-th derivative from degree-N Bernstein coefficients
  // amplifies rounding by about N^mu, so the floor here is coarser
  const double bfloor = 1e-11;
  for (const auto &id : IntervalFunction::catalogue()) {
    auto f = IntervalFunction::lookup(id);
    for (int mu : {0, 1, 2}) {
      std::vector<double> ladder;
      for (int N : {8, 16, 32, 64})
        ladder.push_back(interval_ck_errors(f, weierstrass_integrate_approx(f, mu, N), mu, 256)[mu]);
      for (size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i - 1] <= bfloor || ladder[i] <= bfloor) {
          CHECK(ladder[i] <= bfloor);
          continue;
        }
        CHECK(ladder[i] <= ladder[i - 1]);
      }
    }
  }
}

TEST_CASE("catalogue lookups reject unknown identifiers") {
  CHECK_THROWS_AS(TorusFunction::lookup("mystery"), mloop::ConfigError);
  CHECK_THROWS_AS(IntervalFunction::lookup("mystery"), mloop::ConfigError);
}
