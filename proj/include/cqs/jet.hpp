#pragma once

#include <array>
#include <cassert>
#include <complex>

#include "cqs/types.hpp"

namespace cqs
{

/// Truncated Taylor series c_0 + c_1 t + ... + c_order t^order of a complex
/// function about a point, c_j = f^{(j)} / j!. Arithmetic propagates all
/// coefficients up to `order`, so f^{(j)} of a composite expression is
/// j! * c_j of the resulting jet.
class Jet
{
public:
  static constexpr int max_order = 10;

  explicit Jet(int order = 0, cplx value = 0.0) : order_(order)
  {
    assert(order >= 0 && order <= max_order);
    c_.fill(0.0);
    c_[0] = value;
  }

  /// The independent variable: value x0, derivative 1.
  static Jet variable(int order, cplx x0)
  {
    Jet j(order, x0);
    if (order > 0)
    {
      j.c_[1] = 1.0;
    }
    return j;
  }

  int order() const { return order_; }
  cplx operator[](int k) const { return c_[k]; }
  cplx &operator[](int k) { return c_[k]; }
  cplx value() const { return c_[0]; }

  /// k-th derivative.
  cplx derivative(int k) const
  {
    double f = 1.0;
    for (int i = 2; i <= k; ++i)
    {
      f *= i;
    }
    return f * c_[k];
  }

  Jet &operator+=(const Jet &o)
  {
    for (int k = 0; k <= order_; ++k)
    {
      c_[k] += o.c_[k];
    }
    return *this;
  }
  Jet &operator-=(const Jet &o)
  {
    for (int k = 0; k <= order_; ++k)
    {
      c_[k] -= o.c_[k];
    }
    return *this;
  }
  Jet &operator*=(cplx s)
  {
    for (int k = 0; k <= order_; ++k)
    {
      c_[k] *= s;
    }
    return *this;
  }
  Jet &operator+=(cplx s)
  {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet &b) { return a += b; }
  friend Jet operator-(Jet a, const Jet &b) { return a -= b; }
  friend Jet operator+(Jet a, cplx s) { return a += s; }
  friend Jet operator+(cplx s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, cplx s) { return a += -s; }
  friend Jet operator-(cplx s, const Jet &a)
  {
    Jet r = a;
    r *= -1.0;
    r += s;
    return r;
  }
  friend Jet operator*(Jet a, cplx s) { return a *= s; }
  friend Jet operator*(cplx s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet &a, const Jet &b)
  {
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k)
    {
      cplx s = 0.0;
      for (int j = 0; j <= k; ++j)
      {
        s += a.c_[j] * b.c_[k - j];
      }
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet &a, const Jet &b)
  {
    Jet q(a.order_);
    for (int k = 0; k <= a.order_; ++k)
    {
      cplx s = a.c_[k];
      for (int j = 0; j < k; ++j)
      {
        s -= q.c_[j] * b.c_[k - j];
      }
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

  friend Jet exp(const Jet &a)
  {
    Jet e(a.order_);
    e.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k)
    {
      cplx s = 0.0;
      for (int j = 1; j <= k; ++j)
      {
        s += static_cast<double>(j) * a.c_[j] * e.c_[k - j];
      }
      e.c_[k] = s / static_cast<double>(k);
    }
    return e;
  }

  /// Principal-branch logarithm of the constant term.
  friend Jet log(const Jet &a)
  {
    Jet l(a.order_);
    l.c_[0] = std::log(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k)
    {
      cplx s = 0.0;
      for (int j = 1; j < k; ++j)
      {
        s += static_cast<double>(j) * l.c_[j] * a.c_[k - j];
      }
      l.c_[k] = (a.c_[k] - s / static_cast<double>(k)) / a.c_[0];
    }
    return l;
  }

  /// a^p = exp(p log a), principal branch.
  friend Jet pow(const Jet &a, cplx p) { return exp(log(a) * p); }

  friend Jet ipow(const Jet &a, int n)
  {
    Jet r(a.order_, 1.0);
    Jet base = a;
    while (n > 0)
    {
      if (n & 1)
      {
        r = r * base;
      }
      n >>= 1;
      if (n > 0)
      {
        base = base * base;
      }
    }
    return r;
  }

private:
  int order_;
  std::array<cplx, max_order + 1> c_;
};

}  // namespace cqs
