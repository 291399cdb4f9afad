#include "cqs/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "cqs/error.hpp"
#include "cqs/types.hpp"

namespace cqs
{

namespace
{

// P_n(x) and P_n'(x).
void legendre_eval(int n, double x, double &p, double &dp)
{
  double p0 = 1.0;
  double p1 = x;
  if (n == 0)
  {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k)
  {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// L_n(x) and L_{n-1}(x) up to a common factor exp(log_scale).
void laguerre_eval(int n, double x, double &ln, double &lnm1, double &log_scale)
{
  double prev = 1.0;
  double cur = 1.0 - x;
  log_scale = 0.0;
  if (n == 1)
  {
    ln = cur;
    lnm1 = prev;
    return;
  }
  for (int k = 1; k < n; ++k)
  {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e100)
    {
      cur *= 1e-100;
      prev *= 1e-100;
      log_scale += 100.0 * std::log(10.0);
    }
  }
  ln = cur;
  lnm1 = prev;
}

std::vector<double> golub_welsch_laguerre(int n)
{
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int i = 0; i < n; ++i)
  {
    diag(i) = 2.0 * i + 1.0;
  }
  for (int i = 0; i + 1 < n; ++i)
  {
    sub(i) = i + 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  const auto &ev = solver.eigenvalues();
  return {ev.data(), ev.data() + n};
}

QuadratureRule make_legendre(int n)
{
  QuadratureRule rule{QuadratureKind::legendre, std::vector<double>(n), std::vector<double>(n), {}};
  for (int i = 0; i < (n + 1) / 2; ++i)
  {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      legendre_eval(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    legendre_eval(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1)
  {
    rule.nodes[n / 2] = 0.0;
  }
  rule.scaled_weights = rule.weights;
  return rule;
}

QuadratureRule make_laguerre(int n)
{
  QuadratureRule rule{QuadratureKind::laguerre, golub_welsch_laguerre(n), std::vector<double>(n),
                      std::vector<double>(n)};
  for (int i = 0; i < n; ++i)
  {
    double x = rule.nodes[i];
    double ln = 0.0;
    double lm = 0.0;
    double ls = 0.0;
    for (int it = 0; it < 50; ++it)
    {
      laguerre_eval(n, x, ln, lm, ls);
      const double dl = n * (ln - lm) / x;
      const double dx = ln / dl;
      x -= dx;
      if (std::abs(dx) < 1e-15 * std::max(1.0, x))
      {
        break;
      }
    }
    laguerre_eval(n, x, ln, lm, ls);
    const double dl = n * (ln - lm) / x;
    // w = 1 / (x L_n'(x)^2), computed in log form.
    const double logw = -std::log(x) - 2.0 * (std::log(std::abs(dl)) + ls);
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(logw);
    rule.scaled_weights[i] = std::exp(logw + x);
  }
  return rule;
}

}  // namespace

QuadratureRule make_quadrature(QuadratureKind kind, int n)
{
  if (n < 1)
  {
    throw DomainError("make_quadrature: rule size must be >= 1");
  }
  if (kind == QuadratureKind::legendre)
  {
    return make_legendre(n);
  }
  if (n == 1)
  {
    return {QuadratureKind::laguerre, {1.0}, {1.0}, {std::exp(1.0)}};
  }
  return make_laguerre(n);
}

Panel gauss_legendre_panel(const QuadratureRule &rule, double a, double b)
{
  Panel p;
  p.x.resize(rule.size());
  p.w.resize(rule.size());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    p.x[i] = mid + half * rule.nodes[i];
    p.w[i] = half * rule.weights[i];
  }
  return p;
}

}  // namespace cqs
