#include "mloop/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mloop/errors.hpp"

namespace mloop::density {

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

// truncated Taylor jet at a point: j[k] = f^(k)(x) / k!
using Jet = std::vector<double>;

Jet jet_const(double v, size_t len) {
  Jet j(len, 0.0);
  j[0] = v;
  return j;
}

Jet jet_var(double x, size_t len) {
  Jet j(len, 0.0);
  j[0] = x;
  if (len > 1)
    j[1] = 1.0;
  return j;
}

Jet jet_add(const Jet &a, const Jet &b) {
  Jet out(a.size());
  for (size_t k = 0; k < a.size(); ++k)
    out[k] = a[k] + b[k];
  return out;
}

Jet jet_scale(const Jet &a, double c) {
  Jet out(a.size());
  for (size_t k = 0; k < a.size(); ++k)
    out[k] = c * a[k];
  return out;
}

Jet jet_mul(const Jet &a, const Jet &b) {
  Jet out(a.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; i + j < a.size(); ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

// exp(g): e[0] = exp(g[0]); k e[k] = sum_{j=1..k} j g[j] e[k-j]
Jet jet_exp(const Jet &g) {
  Jet e(g.size(), 0.0);
  e[0] = std::exp(g[0]);
  for (size_t k = 1; k < g.size(); ++k) {
    double acc = 0.0;
    for (size_t j = 1; j <= k; ++j)
      acc += static_cast<double>(j) * g[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

// sin and cos jets of the identity-composed angle u (jet of a scalar angle)
void jet_sincos(const Jet &u, Jet &s, Jet &c) {
  s.assign(u.size(), 0.0);
  c.assign(u.size(), 0.0);
  s[0] = std::sin(u[0]);
  c[0] = std::cos(u[0]);
  for (size_t k = 1; k < u.size(); ++k) {
    double sa = 0.0, ca = 0.0;
    for (size_t j = 1; j <= k; ++j) {
      sa += static_cast<double>(j) * u[j] * c[k - j];
      ca += static_cast<double>(j) * u[j] * s[k - j];
    }
    s[k] = sa / static_cast<double>(k);
    c[k] = -ca / static_cast<double>(k);
  }
}

double jet_deriv(const Jet &j, int order) {
  double fact = 1.0;
  for (int i = 2; i <= order; ++i)
    fact *= i;
  return j[static_cast<size_t>(order)] * fact;
}

// one-dimensional factors of the catalogue functions

// exp(sin theta)
Jet factor_exp_sin(double theta, size_t len) {
  Jet s, c;
  jet_sincos(jet_var(theta, len), s, c);
  return jet_exp(s);
}

// periodised Gaussian sum_j exp(-(theta - pi + 2 pi j)^2 / (2 s^2)), s = 1/2
Jet factor_gauss(double theta, size_t len) {
  const double s2 = 0.25;
  Jet acc(len, 0.0);
  for (int j = -8; j <= 8; ++j) {
    Jet u = jet_var(theta, len);
    u[0] += -std::numbers::pi + TWO_PI * j;
    Jet q = jet_mul(u, u);
    acc = jet_add(acc, jet_exp(jet_scale(q, -1.0 / (2.0 * s2))));
  }
  return acc;
}

// 1 + cos(theta) - sin(2 theta)/2 + cos(3 theta)/4
Jet factor_trig_poly(double theta, size_t len) {
  Jet s1, c1, s2, c2, s3, c3;
  jet_sincos(jet_var(theta, len), s1, c1);
  jet_sincos(jet_scale(jet_var(theta, len), 2.0), s2, c2);
  jet_sincos(jet_scale(jet_var(theta, len), 3.0), s3, c3);
  Jet out = jet_const(1.0, len);
  out = jet_add(out, c1);
  out = jet_add(out, jet_scale(s2, -0.5));
  out = jet_add(out, jet_scale(c3, 0.25));
  return out;
}

// 1 + cos(theta)/2
Jet factor_half_cos(double theta, size_t len) {
  Jet s, c;
  jet_sincos(jet_var(theta, len), s, c);
  return jet_add(jet_const(1.0, len), jet_scale(c, 0.5));
}

} // namespace

TorusFunction TorusFunction::lookup(const std::string &id) {
  if (id == "exp-sin")
    return TorusFunction(id, 1, -1);
  if (id == "gauss")
    return TorusFunction(id, 1, -1);
  if (id == "trig-poly")
    return TorusFunction(id, 1, 3);
  if (id == "exp-sin-2d")
    return TorusFunction(id, 2, -1);
  throw ConfigError("unknown torus catalogue function '" + id + "'");
}

std::vector<std::string> TorusFunction::catalogue() { return {"exp-sin", "gauss", "trig-poly", "exp-sin-2d"}; }

double TorusFunction::eval(const std::vector<int> &alpha, const std::vector<double> &theta) const {
  if (alpha.size() != dim_ || theta.size() != dim_)
    throw Error("derivative order / point arity mismatch");
  for (int a : alpha)
    if (a < 0)
      throw Error("negative derivative order");
  if (id_ == "exp-sin")
    return jet_deriv(factor_exp_sin(theta[0], alpha[0] + 1), alpha[0]);
  if (id_ == "gauss")
    return jet_deriv(factor_gauss(theta[0], alpha[0] + 1), alpha[0]);
  if (id_ == "trig-poly")
    return jet_deriv(factor_trig_poly(theta[0], alpha[0] + 1), alpha[0]);
  // exp-sin-2d = exp(sin theta1) * (1 + cos(theta2)/2): partials factorise
  double f1 = jet_deriv(factor_exp_sin(theta[0], alpha[0] + 1), alpha[0]);
  double f2 = jet_deriv(factor_half_cos(theta[1], alpha[1] + 1), alpha[1]);
  return f1 * f2;
}

// ---------------------------------------------------------------------------
// TrigPoly

TrigPoly::TrigPoly(size_t dim, int N) : dim_(dim), N_(N) {
  if (dim < 1 || dim > 2)
    throw Error("trig polynomials support dim 1 or 2");
  size_t width = static_cast<size_t>(2 * N + 1);
  coeff_.assign(dim == 1 ? width : width * width, {0.0, 0.0});
}

std::complex<double> &TrigPoly::at(const std::vector<int> &k) {
  size_t width = static_cast<size_t>(2 * N_ + 1);
  size_t idx = static_cast<size_t>(k[0] + N_);
  if (dim_ == 2)
    idx = idx * width + static_cast<size_t>(k[1] + N_);
  return coeff_[idx];
}

const std::complex<double> &TrigPoly::at(const std::vector<int> &k) const {
  return const_cast<TrigPoly *>(this)->at(k);
}

std::complex<double> TrigPoly::eval(const std::vector<int> &alpha, const std::vector<double> &theta) const {
  std::complex<double> acc{0.0, 0.0};
  if (dim_ == 1) {
    for (int k = -N_; k <= N_; ++k) {
      std::complex<double> c = at({k});
      if (c == std::complex<double>{0.0, 0.0})
        continue;
      std::complex<double> ik{0.0, static_cast<double>(k)};
      std::complex<double> factor{1.0, 0.0};
      for (int a = 0; a < alpha[0]; ++a)
        factor *= ik;
      acc += c * factor * std::exp(std::complex<double>{0.0, k * theta[0]});
    }
    return acc;
  }
  for (int k1 = -N_; k1 <= N_; ++k1)
    for (int k2 = -N_; k2 <= N_; ++k2) {
      std::complex<double> c = at({k1, k2});
      if (c == std::complex<double>{0.0, 0.0})
        continue;
      std::complex<double> factor{1.0, 0.0};
      for (int a = 0; a < alpha[0]; ++a)
        factor *= std::complex<double>{0.0, static_cast<double>(k1)};
      for (int a = 0; a < alpha[1]; ++a)
        factor *= std::complex<double>{0.0, static_cast<double>(k2)};
      acc += c * factor * std::exp(std::complex<double>{0.0, k1 * theta[0] + k2 * theta[1]});
    }
  return acc;
}

TrigPoly TrigPoly::axis_derivative(size_t axis) const {
  TrigPoly out(dim_, N_);
  if (dim_ == 1) {
    for (int k = -N_; k <= N_; ++k)
      out.at({k}) = at({k}) * std::complex<double>{0.0, static_cast<double>(k)};
    return out;
  }
  for (int k1 = -N_; k1 <= N_; ++k1)
    for (int k2 = -N_; k2 <= N_; ++k2)
      out.at({k1, k2}) = at({k1, k2}) * std::complex<double>{0.0, static_cast<double>(axis == 0 ? k1 : k2)};
  return out;
}

TrigPoly fourier_truncate(const TorusFunction &f, int N) {
  if (N < 0)
    throw Error("truncation order must be nonnegative");
  size_t M = static_cast<size_t>(4 * N + 8); // >= 4N+1 points per axis
  TrigPoly p(f.dim(), N);
  if (f.dim() == 1) {
    std::vector<double> samples(M);
    for (size_t m = 0; m < M; ++m)
      samples[m] = f.value({TWO_PI * static_cast<double>(m) / static_cast<double>(M)});
    for (int k = -N; k <= N; ++k) {
      std::complex<double> acc{0.0, 0.0};
      for (size_t m = 0; m < M; ++m) {
        double angle = -k * TWO_PI * static_cast<double>(m) / static_cast<double>(M);
        acc += samples[m] * std::exp(std::complex<double>{0.0, angle});
      }
      p.at({k}) = acc / static_cast<double>(M);
    }
    return p;
  }
  std::vector<double> samples(M * M);
  for (size_t m1 = 0; m1 < M; ++m1)
    for (size_t m2 = 0; m2 < M; ++m2)
      samples[m1 * M + m2] = f.value(
          {TWO_PI * static_cast<double>(m1) / static_cast<double>(M), TWO_PI * static_cast<double>(m2) / static_cast<double>(M)});
  // separable transform: first axis 2, then axis 1
  size_t width = static_cast<size_t>(2 * N + 1);
  std::vector<std::complex<double>> half(M * width);
  for (size_t m1 = 0; m1 < M; ++m1)
    for (int k2 = -N; k2 <= N; ++k2) {
      std::complex<double> acc{0.0, 0.0};
      for (size_t m2 = 0; m2 < M; ++m2) {
        double angle = -k2 * TWO_PI * static_cast<double>(m2) / static_cast<double>(M);
        acc += samples[m1 * M + m2] * std::exp(std::complex<double>{0.0, angle});
      }
      half[m1 * width + static_cast<size_t>(k2 + N)] = acc / static_cast<double>(M);
    }
  for (int k1 = -N; k1 <= N; ++k1)
    for (int k2 = -N; k2 <= N; ++k2) {
      std::complex<double> acc{0.0, 0.0};
      for (size_t m1 = 0; m1 < M; ++m1) {
        double angle = -k1 * TWO_PI * static_cast<double>(m1) / static_cast<double>(M);
        acc += half[m1 * width + static_cast<size_t>(k2 + N)] * std::exp(std::complex<double>{0.0, angle});
      }
      p.at({k1, k2}) = acc / static_cast<double>(M);
    }
  return p;
}

namespace {

// multi-orders with |alpha| = o in dim components
std::vector<std::vector<int>> orders_of_total(size_t dim, int o) {
  std::vector<std::vector<int>> out;
  if (dim == 1) {
    out.push_back({o});
    return out;
  }
  for (int a = 0; a <= o; ++a)
    out.push_back({a, o - a});
  return out;
}

} // namespace

ApproxReport ck_error(const TorusFunction &f, const TrigPoly &approx, int k, size_t grid_per_axis) {
  if (k < 0)
    throw Error("derivative order must be nonnegative");
  ApproxReport report;
  report.N = approx.order();
  report.grid_per_axis = grid_per_axis;
  report.sup_errors.assign(static_cast<size_t>(k) + 1, 0.0);
  auto visit = [&](const std::vector<double> &theta) {
    for (int o = 0; o <= k; ++o) {
      for (const auto &alpha : orders_of_total(f.dim(), o)) {
        double fv = f.eval(alpha, theta);
        std::complex<double> pv = approx.eval(alpha, theta);
        double err = std::abs(pv - std::complex<double>{fv, 0.0});
        if (err > report.sup_errors[static_cast<size_t>(o)])
          report.sup_errors[static_cast<size_t>(o)] = err;
      }
    }
  };
  if (f.dim() == 1) {
    for (size_t g = 0; g < grid_per_axis; ++g)
      visit({TWO_PI * static_cast<double>(g) / static_cast<double>(grid_per_axis)});
  } else {
    for (size_t g1 = 0; g1 < grid_per_axis; ++g1)
      for (size_t g2 = 0; g2 < grid_per_axis; ++g2)
        visit({TWO_PI * static_cast<double>(g1) / static_cast<double>(grid_per_axis),
               TWO_PI * static_cast<double>(g2) / static_cast<double>(grid_per_axis)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// interval catalogue and Bernstein machinery

IntervalFunction IntervalFunction::lookup(const std::string &id) {
  if (id == "exp" || id == "quad" || id == "sin-pi")
    return IntervalFunction(id);
  throw ConfigError("unknown interval catalogue function '" + id + "'");
}

std::vector<std::string> IntervalFunction::catalogue() { return {"exp", "quad", "sin-pi"}; }

double IntervalFunction::eval(int deriv_order, double x) const {
  if (deriv_order < 0)
    throw Error("negative derivative order");
  if (id_ == "exp")
    return std::exp(x);
  if (id_ == "quad") {
    // 1 + x/2 - x^2/4
    switch (deriv_order) {
    case 0:
      return 1.0 + 0.5 * x - 0.25 * x * x;
    case 1:
      return 0.5 - 0.5 * x;
    case 2:
      return -0.5;
    default:
      return 0.0;
    }
  }
  // sin(pi x)
  double p = std::numbers::pi;
  double scale = std::pow(p, deriv_order);
  switch (deriv_order % 4) {
  case 0:
    return scale * std::sin(p * x);
  case 1:
    return scale * std::cos(p * x);
  case 2:
    return -scale * std::sin(p * x);
  default:
    return -scale * std::cos(p * x);
  }
}

BernsteinPoly::BernsteinPoly(std::vector<double> coeff) : coeff_(std::move(coeff)) {
  if (coeff_.empty())
    throw Error("Bernstein polynomial needs at least one coefficient");
}

double BernsteinPoly::eval(double x) const {
  // de Casteljau
  std::vector<double> b = coeff_;
  for (size_t level = b.size(); level-- > 1;)
    for (size_t j = 0; j < level; ++j)
      b[j] = (1.0 - x) * b[j] + x * b[j + 1];
  return b[0];
}

BernsteinPoly BernsteinPoly::derivative() const {
  int n = degree();
  if (n == 0)
    return BernsteinPoly(std::vector<double>{0.0});
  std::vector<double> d(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    d[static_cast<size_t>(j)] = n * (coeff_[static_cast<size_t>(j) + 1] - coeff_[static_cast<size_t>(j)]);
  return BernsteinPoly(std::move(d));
}

BernsteinPoly BernsteinPoly::antiderivative() const {
  int n = degree();
  std::vector<double> a(static_cast<size_t>(n) + 2, 0.0);
  double run = 0.0;
  for (int i = 1; i <= n + 1; ++i) {
    run += coeff_[static_cast<size_t>(i) - 1];
    a[static_cast<size_t>(i)] = run / static_cast<double>(n + 1);
  }
  return BernsteinPoly(std::move(a));
}

void BernsteinPoly::add_constant(double c) {
  for (auto &b : coeff_)
    b += c;
}

BernsteinPoly BernsteinPoly::fit(const IntervalFunction &f, int deriv_order, int N) {
  std::vector<double> b(static_cast<size_t>(N) + 1);
  for (int j = 0; j <= N; ++j)
    b[static_cast<size_t>(j)] = f.eval(deriv_order, static_cast<double>(j) / static_cast<double>(N));
  return BernsteinPoly(std::move(b));
}

BernsteinPoly weierstrass_integrate_approx(const IntervalFunction &f, int mu, int N) {
  if (mu < 0)
    throw Error("derivative order must be nonnegative");
  if (N < 1)
    throw Error("Bernstein degree must be positive");
  BernsteinPoly p = BernsteinPoly::fit(f, mu, N);
  for (int s = mu - 1; s >= 0; --s) {
    p = p.antiderivative();
    p.add_constant(f.eval(s, 0.0)); // antiderivative vanishes at 0
  }
  return p;
}

std::vector<double> interval_ck_errors(const IntervalFunction &f, const BernsteinPoly &p, int k, size_t grid) {
  std::vector<double> sup(static_cast<size_t>(k) + 1, 0.0);
  BernsteinPoly cur = p;
  for (int nu = 0; nu <= k; ++nu) {
    for (size_t g = 0; g <= grid; ++g) {
      double x = static_cast<double>(g) / static_cast<double>(grid);
      double err = std::abs(f.eval(nu, x) - cur.eval(x));
      if (err > sup[static_cast<size_t>(nu)])
        sup[static_cast<size_t>(nu)] = err;
    }
    if (nu < k)
      cur = cur.derivative();
  }
  return sup;
}

} // namespace mloop::density
