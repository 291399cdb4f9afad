#include "cqs/jmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqs/error.hpp"
#include "cqs/specfun.hpp"

namespace cqs
{

void LaguerreBasisSpec::validate() const
{
  if (!(b > 0.0) || !std::isfinite(b))
  {
    std::ostringstream msg;
    msg << "basis scale b must be positive, got " << b;
    throw ConfigError(msg.str());
  }
  if (l < 0)
  {
    throw ConfigError("angular momentum l must be non-negative");
  }
  if (N < 1)
  {
    throw ConfigError("basis size N must be at least 1");
  }
}

Kinematics kinematics(const LaguerreBasisSpec &spec, cplx k, double Z)
{
  const double tiny = 1e-14 * std::max(1.0, spec.b);
  if (std::abs(k) < tiny)
  {
    throw DomainError("kinematics: k = 0 is degenerate (beta diverges)");
  }
  if (std::abs(k - I * spec.b) < tiny || std::abs(k + I * spec.b) < tiny)
  {
    throw DomainError("kinematics: k = +-ib makes omega vanish or diverge");
  }
  Kinematics kin;
  kin.k = k;
  kin.omega = (spec.b + I * k) / (spec.b - I * k);
  kin.sin_xi = 2.0 * spec.b * k / (spec.b * spec.b + k * k);
  kin.beta = -Z / k;
  kin.Z = Z;
  return kin;
}

namespace
{

constexpr double series_radius = 0.95;

// Steps L_j^a(x) -> L_{j+1}^a(x) by the three-term recurrence.
struct LaguerreLadder
{
  double a;
  double x;
  int j = 0;
  double prev = 0.0;
  double cur = 1.0;

  void advance()
  {
    const double next =
        j == 0 ? 1.0 + a - x : ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
    ++j;
  }
};

}  // namespace

void laguerre_basis_all(const LaguerreBasisSpec &spec, int count, double r, double *values,
                        double *derivs)
{
  const int l = spec.l;
  const double x = 2.0 * spec.b * r;
  const double envelope = std::exp(-0.5 * x) * std::pow(x, l);
  LaguerreLadder lag{2.0 * l + 1.0, x};   // L_n^{2l+1}
  LaguerreLadder dlag{2.0 * l + 2.0, x};  // L_{n-1}^{2l+2} = -d/dx L_n^{2l+1}
  double norm = 1.0 / std::sqrt(factorial(2 * l + 1));
  for (int n = 0; n < count; ++n)
  {
    if (n > 0)
    {
      lag.advance();
      norm /= std::sqrt((n + 2.0 * l + 1.0) / n);
    }
    if (n > 1)
    {
      dlag.advance();
    }
    const double dl = n > 0 ? dlag.cur : 0.0;
    values[n] = norm * envelope * x * lag.cur;
    if (derivs != nullptr)
    {
      derivs[n] = 2.0 * spec.b * norm * envelope * ((l + 1.0 - 0.5 * x) * lag.cur - x * dl);
    }
  }
}

double laguerre_basis_eval(const LaguerreBasisSpec &spec, int n, double r)
{
  const int l = spec.l;
  const double x = 2.0 * spec.b * r;
  const double norm = 1.0 / std::sqrt(pochhammer(n + 1.0, 2 * l + 1).real());
  return norm * std::pow(x, l + 1) * std::exp(-0.5 * x) * laguerre_poly(n, 2.0 * l + 1.0, x);
}

double laguerre_basis_deriv(const LaguerreBasisSpec &spec, int n, double r)
{
  const int l = spec.l;
  const double x = 2.0 * spec.b * r;
  const double norm = 1.0 / std::sqrt(pochhammer(n + 1.0, 2 * l + 1).real());
  const double lag = laguerre_poly(n, 2.0 * l + 1.0, x);
  const double dlag = n > 0 ? -laguerre_poly(n - 1, 2.0 * l + 2.0, x) : 0.0;
  return 2.0 * spec.b * norm * std::exp(-0.5 * x) * std::pow(x, l) *
         ((l + 1.0 - 0.5 * x) * lag + x * dlag);
}

cplx s_gauge(const LaguerreBasisSpec &spec, const Kinematics &kin)
{
  const cplx z = spec.l + 1.0 + I * kin.beta;
  const double log_abs_gamma = log_gamma(z).real();
  return std::exp(-0.5 * pi * kin.beta - I * kin.beta * std::log(kin.omega) + log_abs_gamma);
}

JMatrixCoefficients jmatrix_coefficients(const LaguerreBasisSpec &spec, const Kinematics &kin,
                                         int count)
{
  const int l = spec.l;
  const cplx w = kin.omega;
  const cplx w2 = w * w;
  const cplx zs = 1.0 - 1.0 / w2;
  const cplx a_s = l + 1.0 + I * kin.beta;
  const cplx two_sin = 2.0 * kin.sin_xi;
  const cplx s_pref = 0.5 * std::pow(two_sin, l + 1) / factorial(2 * l + 1);
  const cplx c_pref = -std::pow(two_sin, -l);
  const cplx k2 = kin.k * kin.k;
  const double b2 = spec.b * spec.b;
  const cplx off = -(k2 + b2) / (4.0 * spec.b);

  JMatrixCoefficients out;
  out.s.resize(count);
  out.c.resize(count);
  cplx minus_w_pow = 1.0;                                     // (-w)^n
  cplx ratio = std::sqrt(factorial(2 * l + 1)) / a_s;         // sqrt(n!(n+2l+1)!) / (l+1+i beta)_{n+1}
  double sqrt_poch = std::sqrt(factorial(2 * l + 1));         // sqrt((n+1)_{2l+1})
  for (int n = 0; n < count; ++n)
  {
    if (n > 0)
    {
      minus_w_pow *= -w;
      ratio *= std::sqrt(n * (n + 2.0 * l + 1.0)) / (a_s + static_cast<double>(n));
      sqrt_poch *= std::sqrt((n + 2.0 * l + 1.0) / n);
    }
    if (n < 2)
    {
      out.s[n] = s_pref * sqrt_poch * minus_w_pow * hyp2f1(-static_cast<double>(n), a_s, 2.0 * l + 2.0, zs);
    }
    else
    {
      // The sine-like solution solves the homogeneous three-term recurrence of the
      // tridiagonal (E - h) matrix and is the dominant solution on both sheets, so the
      // forward recurrence is stable where the terminating sum loses digits.
      const double m = n - 1;
      const cplx diag = (k2 - b2) * (m + l + 1.0) / (2.0 * spec.b) + kin.Z;
      const cplx lower = off * std::sqrt(m * (m + 2.0 * l + 1.0));
      const cplx upper = off * std::sqrt((m + 1.0) * (m + 2.0 * l + 2.0));
      out.s[n] = -(lower * out.s[n - 2] + diag * out.s[n - 1]) / upper;
    }
    // Inside the unit disk the series terms shrink monotonically (up to a factor
    // |w|^2 per term), so the plain series is used there even near |w| = 1.
    const cplx ca = -static_cast<double>(l) + I * kin.beta;
    const cplx cc = n + l + 2.0 + I * kin.beta;
    const cplx f = std::abs(w2) < series_radius ? hyp2f1_series(ca, n + 1.0, cc, w2) : hyp2f1(ca, n + 1.0, cc, w2);
    out.c[n] = c_pref * ratio * minus_w_pow * (-w) * f;
  }
  return out;
}

cplx s_coefficient(const LaguerreBasisSpec &spec, int n, const Kinematics &kin)
{
  return jmatrix_coefficients(spec, kin, n + 1).s[n] * s_gauge(spec, kin);
}

cplx c_plus_coefficient(const LaguerreBasisSpec &spec, int n, const Kinematics &kin)
{
  return jmatrix_coefficients(spec, kin, n + 1).c[n] / s_gauge(spec, kin);
}

GreenMatrix1p green_matrix_1p(const LaguerreBasisSpec &spec, const Kinematics &kin, int rows)
{
  if (rows < 0)
  {
    rows = spec.N;
  }
  const int cols = spec.N;
  const JMatrixCoefficients co = jmatrix_coefficients(spec, kin, std::max(rows, cols));
  const cplx f = -2.0 / kin.k;
  GreenMatrix1p g(rows, cols);
  for (int m = 0; m < rows; ++m)
  {
    for (int n = 0; n < cols; ++n)
    {
      const int lo = std::min(m, n);
      const int hi = std::max(m, n);
      g(m, n) = f * co.s[lo] * co.c[hi];
    }
  }
  return g;
}

Eigen::MatrixXcd hamiltonian_tridiagonal(const LaguerreBasisSpec &spec, cplx energy, int rows,
                                         int cols, double Z)
{
  const double b = spec.b;
  const int l = spec.l;
  const cplx k2 = 2.0 * energy;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(rows, cols);
  for (int m = 0; m < rows; ++m)
  {
    for (int n = std::max(0, m - 1); n < std::min(cols, m + 2); ++n)
    {
      if (n == m)
      {
        t(m, n) = (k2 - b * b) * (n + l + 1.0) / (2.0 * b) + Z;
      }
      else
      {
        const int lo = std::min(m, n);
        t(m, n) = -(k2 + b * b) / (4.0 * b) * std::sqrt((lo + 1.0) * (lo + 2.0 * l + 2.0));
      }
    }
  }
  return t;
}

}  // namespace cqs
