#pragma once

#include <complex>
#include <string>
#include <vector>

namespace mloop::density {

/// Closed catalogue of analytic test functions on the real torus (dim 1 or
/// 2). Derivatives of every order come from exact Taylor-jet recurrences,
/// never from numerical differencing.
class TorusFunction {
public:
  static TorusFunction lookup(const std::string &id);
  static std::vector<std::string> catalogue();

  const std::string &id() const { return id_; }
  size_t dim() const { return dim_; }
  /// True when the function is itself a trigonometric polynomial; degree()
  /// then bounds its harmonics.
  bool is_trig_poly() const { return trig_degree_ >= 0; }
  int trig_degree() const { return trig_degree_; }

  /// Partial derivative of multi-order `alpha` at the point `theta`.
  double eval(const std::vector<int> &alpha, const std::vector<double> &theta) const;
  double value(const std::vector<double> &theta) const { return eval(std::vector<int>(dim_, 0), theta); }

private:
  TorusFunction(std::string id, size_t dim, int trig_degree) : id_(std::move(id)), dim_(dim), trig_degree_(trig_degree) {}
  std::string id_;
  size_t dim_;
  int trig_degree_;
};

/// Truncated Fourier series; coefficients indexed by k in [-N, N]^dim.
/// A genuine Laurent-monomial combination in e^{i theta}.
class TrigPoly {
public:
  TrigPoly(size_t dim, int N);

  size_t dim() const { return dim_; }
  int order() const { return N_; }

  std::complex<double> &at(const std::vector<int> &k);
  const std::complex<double> &at(const std::vector<int> &k) const;

  /// Derivative of multi-order `alpha`, evaluated analytically from the
  /// coefficients: multiply c_k by prod (i k_j)^{alpha_j}.
  std::complex<double> eval(const std::vector<int> &alpha, const std::vector<double> &theta) const;

  /// Coefficient-level derivative along one axis (second code path for the
  /// derivative-consistency check).
  TrigPoly axis_derivative(size_t axis) const;

private:
  size_t dim_;
  int N_;
  std::vector<std::complex<double>> coeff_;
};

/// Fourier truncation with trapezoidal quadrature on >= 4N+1 points per
/// axis; spectrally accurate for the analytic catalogue.
TrigPoly fourier_truncate(const TorusFunction &f, int N);

struct ApproxReport {
  int N = 0;
  size_t grid_per_axis = 0;
  /// sup_errors[o] = max over multi-orders |alpha| = o and grid points of
  /// |d^alpha f - d^alpha approx|.
  std::vector<double> sup_errors;
};

ApproxReport ck_error(const TorusFunction &f, const TrigPoly &approx, int k, size_t grid_per_axis);

/// Closed catalogue of functions on [0,1] with exact derivatives.
class IntervalFunction {
public:
  static IntervalFunction lookup(const std::string &id);
  static std::vector<std::string> catalogue();

  const std::string &id() const { return id_; }
  double eval(int deriv_order, double x) const;

private:
  explicit IntervalFunction(std::string id) : id_(std::move(id)) {}
  std::string id_;
};

/// Polynomial in the Bernstein basis on [0,1]; integration is exact in the
/// coefficient representation and evaluation uses de Casteljau.
class BernsteinPoly {
public:
  explicit BernsteinPoly(std::vector<double> coeff); // degree = size - 1

  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  double eval(double x) const;
  BernsteinPoly derivative() const;
  /// Antiderivative with value 0 at x = 0.
  BernsteinPoly antiderivative() const;
  void add_constant(double c);

  /// Bernstein approximation of g sampled at j/N.
  static BernsteinPoly fit(const IntervalFunction &f, int deriv_order, int N);

private:
  std::vector<double> coeff_;
};

/// Approximates the mu-th derivative by a degree-N Bernstein polynomial and
/// integrates mu times, matching f's derivatives at 0. All derivatives of
/// order <= mu then converge uniformly as N grows.
BernsteinPoly weierstrass_integrate_approx(const IntervalFunction &f, int mu, int N);

/// sup_x |f^(nu) - p^(nu)| on a uniform grid, for each nu <= k.
std::vector<double> interval_ck_errors(const IntervalFunction &f, const BernsteinPoly &p, int k, size_t grid);

} // namespace mloop::density
