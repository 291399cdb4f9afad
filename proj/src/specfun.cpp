#include "cqs/specfun.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "cqs/error.hpp"

namespace cqs
{

namespace
{

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z)
{
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// log Gamma for Re z >= 1/2.
cplx log_gamma_right(cplx z)
{
  z -= 1.0;
  cplx x = lanczos_coef[0];
  for (std::size_t i = 1; i < lanczos_coef.size(); ++i)
  {
    x += lanczos_coef[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_gamma(cplx z)
{
  if (is_nonpositive_integer(z))
  {
    std::ostringstream msg;
    msg << "gamma pole at z = " << z.real();
    throw DomainError(msg.str());
  }
  if (z.real() < 0.5)
  {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

cplx gamma_complex(cplx z)
{
  if (is_nonpositive_integer(z))
  {
    std::ostringstream msg;
    msg << "gamma pole at z = " << z.real();
    throw DomainError(msg.str());
  }
  if (z.real() < 0.5)
  {
    return pi / (std::sin(pi * z) * std::exp(log_gamma_right(1.0 - z)));
  }
  return std::exp(log_gamma_right(z));
}

cplx pochhammer(cplx z, int n)
{
  cplx p = 1.0;
  for (int i = 0; i < n; ++i)
  {
    p *= z + static_cast<double>(i);
  }
  return p;
}

cplx laguerre_poly(int n, cplx alpha, cplx x)
{
  if (n < 0)
  {
    throw DomainError("laguerre_poly: negative degree");
  }
  cplx prev = 1.0;
  if (n == 0)
  {
    return prev;
  }
  cplx cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k)
  {
    const double kd = k;
    const cplx next = ((2.0 * kd + 1.0 + alpha - x) * cur - (kd + alpha) * prev) / (kd + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_poly(int n, double alpha, double x)
{
  if (n < 0)
  {
    throw DomainError("laguerre_poly: negative degree");
  }
  double prev = 1.0;
  if (n == 0)
  {
    return prev;
  }
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k)
  {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double spherical_j0(double x)
{
  if (std::abs(x) < 1e-4)
  {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double factorial(int n)
{
  double f = 1.0;
  for (int i = 2; i <= n; ++i)
  {
    f *= i;
  }
  return f;
}

}  // namespace cqs
