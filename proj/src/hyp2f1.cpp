#include <cmath>
#include <sstream>

#include "cqs/error.hpp"
#include "cqs/specfun.hpp"

namespace cqs
{

namespace
{

constexpr int max_series_terms = 10000;
constexpr double series_eps = 1e-17;
constexpr double direct_radius = 0.7;

bool nonpositive_integer(cplx z, int &n)
{
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
  {
    n = static_cast<int>(-z.real());
    return true;
  }
  return false;
}

// 2F1(-n, b; c; z) by the contiguous relation in the first parameter,
//   (c - a) F(a - 1) + (2a - c + (b - a) z) F(a) + a (z - 1) F(a + 1) = 0,
// run from F(0) = 1, F(-1) = 1 - bz/c down to a = -n. The explicit sum loses
// digits to cancellation once |z| approaches or exceeds 1 (about 15 digits at
// n = 40, |z| = 1.6); the recurrence stays at rounding level there.
cplx terminating_sum(int n, cplx b, cplx c, cplx z)
{
  if (n == 0)
  {
    return 1.0;
  }
  cplx above = 1.0;
  cplx f = 1.0;
  for (int j = 0; j < n; ++j)
  {
    const double a = -j;
    if (c - a == 0.0)
    {
      throw DomainError("hyp2f1: c is a non-positive integer inside the terminating range");
    }
    const cplx next = j == 0 ? 1.0 - b * z / c : -((2.0 * a - c + (b - a) * z) * f + a * (z - 1.0) * above) / (c - a);
    above = f;
    f = next;
  }
  return f;
}

// Taylor re-expansion of the hypergeometric ODE
//   z(1-z) F'' + [c - (a+b+1) z] F' - a b F = 0
// from z0 (where F, F' are known) to z0 + h.
void taylor_step(cplx a, cplx b, cplx c, cplx z0, cplx h, cplx &f, cplx &df)
{
  const cplx lead = z0 * (1.0 - z0);
  const cplx lin = 1.0 - 2.0 * z0;
  const cplx shift = c - (a + b + 1.0) * z0;
  cplx cm = f;   // c_j
  cplx cp = df;  // c_{j+1}
  cplx hp = 1.0;
  cplx fsum = cm;
  cplx dsum = cp;
  int quiet = 0;
  for (int j = 0; j < 600; ++j)
  {
    const double jd = j;
    const cplx next = ((jd + a) * (jd + b) * cm - (jd + 1.0) * (lin * jd + shift) * cp) /
                      (lead * (jd + 1.0) * (jd + 2.0));
    hp *= h;  // h^{j+1}
    const cplx tf = cp * hp;
    const cplx td = (jd + 2.0) * next * hp;
    fsum += tf;
    dsum += td;
    cm = cp;
    cp = next;
    if (std::abs(tf) <= series_eps * std::abs(fsum) && std::abs(td) <= series_eps * std::abs(dsum))
    {
      if (++quiet >= 3)
      {
        f = fsum;
        df = dsum;
        return;
      }
    }
    else
    {
      quiet = 0;
    }
  }
  std::ostringstream msg;
  msg << "hyp2f1: Taylor continuation step did not converge (a = " << a << ", b = " << b << ", c = " << c
      << ", from z = " << z0 << " by " << h << ")";
  throw ConvergenceError(msg.str());
}

cplx ode_continuation(cplx a, cplx b, cplx c, cplx z)
{
  if (z.imag() == 0.0 && z.real() >= 1.0)
  {
    std::ostringstream msg;
    msg << "hyp2f1: argument z = " << z.real() << " lies on the branch cut [1, inf)";
    throw DomainError(msg.str());
  }
  const cplx start = 0.5 * z / std::abs(z);
  cplx f = hyp2f1_series(a, b, c, start);
  cplx df = a * b / c * hyp2f1_series(a + 1.0, b + 1.0, c + 1.0, start);
  cplx cur = start;
  for (int steps = 0; steps < 2000; ++steps)
  {
    cplx step = z - cur;
    if (std::abs(step) == 0.0)
    {
      return f;
    }
    const double reach = 0.5 * std::min(std::abs(cur), std::abs(1.0 - cur));
    bool last = true;
    if (std::abs(step) > reach)
    {
      step *= reach / std::abs(step);
      last = false;
    }
    taylor_step(a, b, c, cur, step, f, df);
    cur = last ? z : cur + step;
  }
  throw ConvergenceError("hyp2f1: ODE continuation exceeded the step budget");
}

}  // namespace

cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z)
{
  int n = 0;
  if (nonpositive_integer(a, n))
  {
    return terminating_sum(n, b, c, z);
  }
  if (nonpositive_integer(b, n))
  {
    return terminating_sum(n, a, c, z);
  }
  if (std::abs(z) >= 1.0)
  {
    std::ostringstream msg;
    msg << "hyp2f1: power series does not converge for |z| = " << std::abs(z);
    throw ConvergenceError(msg.str());
  }
  cplx term = 1.0;
  cplx sum = 1.0;
  int quiet = 0;
  for (int j = 0; j < max_series_terms; ++j)
  {
    const cplx denom = (c + static_cast<double>(j)) * static_cast<double>(j + 1);
    if (denom == 0.0)
    {
      throw DomainError("hyp2f1: c is a non-positive integer");
    }
    term *= (a + static_cast<double>(j)) * (b + static_cast<double>(j)) / denom * z;
    sum += term;
    if (std::abs(term) <= series_eps * std::abs(sum))
    {
      if (++quiet >= 3)
      {
        return sum;
      }
    }
    else
    {
      quiet = 0;
    }
  }
  std::ostringstream msg;
  msg << "hyp2f1: series stagnated after " << max_series_terms
      << " terms, |partial sum| = " << std::abs(sum) << ", |z| = " << std::abs(z);
  throw ConvergenceError(msg.str());
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx z)
{
  int n = 0;
  if (nonpositive_integer(a, n))
  {
    return terminating_sum(n, b, c, z);
  }
  if (nonpositive_integer(b, n))
  {
    return terminating_sum(n, a, c, z);
  }
  if (std::abs(z) < direct_radius)
  {
    return hyp2f1_series(a, b, c, z);
  }
  // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)).
  const cplx zp = z / (z - 1.0);
  if (std::abs(zp) < direct_radius)
  {
    return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, zp);
  }
  return ode_continuation(a, b, c, z);
}

}  // namespace cqs
