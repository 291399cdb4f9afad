#pragma once

// Extended-precision reference implementations, written independently of the
// library (no shared code paths), used as test oracles.

#include <cmath>
#include <complex>

namespace oracle
{

using ld = long double;
using cld = std::complex<long double>;

inline constexpr ld pi_ld = 3.141592653589793238462643383279502884L;

/// log Gamma(z) by upward shift to Re z >= 16 and the Stirling series.
inline cld log_gamma(cld z)
{
  cld shift = 0;
  while (z.real() < 16.0L)
  {
    shift += std::log(z);
    z += 1.0L;
  }
  const cld zi = 1.0L / z;
  const cld zi2 = zi * zi;
  // Bernoulli terms B_{2j} / (2j (2j - 1) z^{2j-1}), j = 1..8.
  const ld c[] = {1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680, 1.0L / 1188, -691.0L / 360360,
                  1.0L / 156, -3617.0L / 122400};
  cld series = 0;
  cld p = zi;
  for (ld ck : c)
  {
    series += ck * p;
    p *= zi2;
  }
  return (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2.0L * pi_ld) + series - shift;
}

inline cld gamma(cld z) { return std::exp(log_gamma(z)); }

/// Terminating 2F1(-n, b; c; z) from the contiguous relation in the first
/// parameter, seeded with F(0) = 1 and F(-1) = 1 - bz/c. An explicit sum
/// cancels badly once |z| exceeds 1, even in extended precision.
inline cld hyp2f1_terminating(int n, cld b, cld c, cld z)
{
  if (n == 0)
  {
    return 1;
  }
  cld up = 1;
  cld f = 1.0L - b * z / c;
  for (int j = 1; j < n; ++j)
  {
    const ld a = -j;
    const cld down = -((2.0L * a - c + (b - a) * z) * f + a * (z - 1.0L) * up) / (c - a);
    up = f;
    f = down;
  }
  return f;
}

/// Power series of 2F1(a, b; c; z) summed until terms drop below 1e-22 relative.
inline cld hyp2f1_series(cld a, cld b, cld c, cld z)
{
  cld term = 1;
  cld sum = 1;
  for (int j = 0; j < 200000; ++j)
  {
    term *= (a + ld(j)) * (b + ld(j)) / ((c + ld(j)) * ld(j + 1)) * z;
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum))
    {
      break;
    }
  }
  return sum;
}

/// L_n^alpha(x) from its explicit monomial expansion.
inline ld laguerre_monomial(int n, ld alpha, ld x)
{
  ld sum = 0;
  for (int i = 0; i <= n; ++i)
  {
    // binom(n + alpha, n - i) (-x)^i / i!
    ld binom = 1;
    for (int j = 1; j <= n - i; ++j)
    {
      binom *= (alpha + i + j) / j;
    }
    ld xi = 1;
    for (int j = 1; j <= i; ++j)
    {
      xi *= -x / j;
    }
    sum += binom * xi;
  }
  return sum;
}

}  // namespace oracle
