#include "cqs/qs1p.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cqs/error.hpp"
#include "cqs/jet.hpp"
#include "cqs/quadrature.hpp"
#include "cqs/specfun.hpp"

namespace cqs
{

int parts_count(int l, cplx beta)
{
  const double re = static_cast<double>(l) + (I * beta).real();
  return std::max(1, static_cast<int>(std::floor(-re)) + 1);
}

namespace
{

// Everything of the integrand except (1-z)^{l+i beta}, as a jet in z.
class SmoothFactor
{
public:
  SmoothFactor(const LaguerreBasisSpec &spec, int n, const Kinematics &kin, double r, int order)
      : n_(n), order_(order), omega_(kin.omega), power_(static_cast<double>(spec.l) - I * kin.beta),
        rate_((spec.b + I * kin.k) * r), shift_(-spec.b * r), x_(2.0 * spec.b * r)
  {
    const int alpha = 2 * spec.l + 1;
    coef_.resize(n + 1);
    for (int j = 0; j <= n; ++j)
    {
      // binom(n + alpha, n - j) / j!
      coef_[j] = factorial(n + alpha) / (factorial(n - j) * factorial(alpha + j) * factorial(j));
    }
  }

  Jet operator()(cplx z) const
  {
    const Jet zj = Jet::variable(order_, z);
    const Jet one_wz = 1.0 - omega_ * zj;
    Jet f = exp(zj * rate_ + shift_) * pow(one_wz, power_);
    if (n_ > 0)
    {
      // (1-z-wz)^n L_n^{alpha}(x (1-z)(1-wz)/(1-z-wz)) as a homogeneous polynomial.
      const Jet a = (1.0 - zj) * one_wz * (-x_);
      const Jet bb = 1.0 - zj - omega_ * zj;
      std::vector<Jet> bpow(n_ + 1, Jet(order_, 1.0));
      for (int j = 1; j <= n_; ++j)
      {
        bpow[j] = bpow[j - 1] * bb;
      }
      Jet apow(order_, 1.0);
      Jet poly = bpow[n_] * coef_[0];
      for (int j = 1; j <= n_; ++j)
      {
        apow = apow * a;
        poly += apow * bpow[n_ - j] * coef_[j];
      }
      f = f * poly;
    }
    return f;
  }

private:
  int n_;
  int order_;
  cplx omega_;
  cplx power_;
  cplx rate_;
  cplx shift_;
  double x_;
  std::vector<double> coef_;
};

// int_0^1 (1-z)^{e} g(z) dz with 1 - z = u^2, on `panels` equal panels in u. The
// first panel is graded geometrically toward u = 0, where u^{2e+1} may be singular
// when no extra integrations by parts were requested.
cplx remainder_integral(const SmoothFactor &f, int deriv, cplx e, const QuadratureRule &rule,
                        int panels)
{
  constexpr int grading_levels = 14;
  constexpr double grading_ratio = 0.15;
  cplx sum = 0.0;
  const auto accumulate = [&](double lo, double hi) {
    const Panel pan = gauss_legendre_panel(rule, lo, hi);
    for (std::size_t i = 0; i < pan.x.size(); ++i)
    {
      const double u = pan.x[i];
      const Jet j = f(1.0 - u * u);
      sum += pan.w[i] * 2.0 * u * std::exp(2.0 * e * std::log(u)) * j.derivative(deriv);
    }
  };
  const double h = 1.0 / panels;
  double hi = h;
  for (int g = 0; g < grading_levels; ++g)
  {
    accumulate(hi * grading_ratio, hi);
    hi *= grading_ratio;
  }
  for (int p = 1; p < panels; ++p)
  {
    accumulate(p * h, (p + 1) * h);
  }
  return sum;
}


// For psi_0 / r = C r^l e^{-br} and large |energy|, the non-oscillatory part of
// (energy - h)^{-1} psi_0 / r has the local expansion sum_j h^j (psi_0/r) / energy^{j+1}.
// Each h^j (psi_0/r) is a polynomial in t = 1/r times C r^l e^{-br}; returns the
// sum of those polynomials over energy^{j+1} (so the local part is psi_0/r times
// the result), or false if the series does not settle below tol.
bool local_resolvent_ratio(int l, double b, double Z, cplx energy, double r, double tol, cplx &out)
{
  const double t = 1.0 / r;
  const auto eval = [t](const std::vector<double> &q) {
    double v = 0.0;
    for (auto it = q.rbegin(); it != q.rend(); ++it)
    {
      v = v * t + *it;
    }
    return v;
  };
  // g = q(t) phi with phi' = (l t - b) phi: returns the polynomial of g'.
  const auto differentiate = [l, b](const std::vector<double> &q) {
    std::vector<double> d(q.size() + 2, 0.0);
    for (std::size_t m = 1; m < q.size(); ++m)
    {
      d[m + 1] -= m * q[m];  // -t^2 d/dt
    }
    for (std::size_t m = 0; m < q.size(); ++m)
    {
      d[m + 1] += l * q[m];
      d[m] -= b * q[m];
    }
    return d;
  };
  std::vector<double> q = {1.0};
  cplx sum = 0.0;
  cplx inv = 1.0 / energy;
  double last = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 40; ++j)
  {
    const cplx term = eval(q) * inv;
    sum += term;
    const double size = std::abs(term);
    if (size <= tol * std::abs(sum))
    {
      out = sum;
      return true;
    }
    if (size > last)
    {
      return false;
    }
    last = size;
    // h g = -g''/2 + l(l+1) t^2 g / 2 - Z t g
    const std::vector<double> d2 = differentiate(differentiate(q));
    std::vector<double> next(q.size() + 4, 0.0);
    for (std::size_t m = 0; m < d2.size(); ++m)
    {
      next[m] -= 0.5 * d2[m];
    }
    for (std::size_t m = 0; m < q.size(); ++m)
    {
      next[m + 2] += 0.5 * l * (l + 1.0) * q[m];
      next[m + 1] -= Z * q[m];
    }
    q = std::move(next);
    inv /= energy;
  }
  return false;
}

}  // namespace

cplx qs_eval_integral(const LaguerreBasisSpec &spec, int n, const Kinematics &kin, double r,
                      const QsIntegralOptions &opt)
{
  if (r < 0.0)
  {
    throw DomainError("qs_eval_integral: negative radius");
  }
  if (r == 0.0)
  {
    return 0.0;
  }
  const cplx s = static_cast<double>(spec.l) + I * kin.beta;
  int parts = parts_count(spec.l, kin.beta) + opt.extra_parts;
  if (opt.force_parts > 0)
  {
    if (opt.force_parts < parts_count(spec.l, kin.beta))
    {
      throw DomainError("qs_eval_integral: forced parts count below the regularizing minimum");
    }
    parts = opt.force_parts;
  }
  const int order = parts - 1;
  if (order > Jet::max_order)
  {
    std::ostringstream msg;
    msg << "qs_eval_integral: " << parts << " integrations by parts exceed the jet order limit";
    throw DomainError(msg.str());
  }
  const SmoothFactor f(spec, n, kin, r, order);

  // Boundary terms at z = 0.
  const Jet at0 = f(0.0);
  cplx boundary = 0.0;
  cplx denom = 1.0;
  for (int j = 0; j <= parts - 2; ++j)
  {
    denom *= s + static_cast<double>(j + 1);
    boundary += at0.derivative(j) / denom;
  }
  const cplx rem_denom = denom;
  const cplx rem_exp = s + static_cast<double>(parts - 1);

  const QuadratureRule rule = make_quadrature(QuadratureKind::legendre, opt.nodes_per_panel);
  int panels = std::max(opt.min_panels,
                        static_cast<int>(std::ceil(std::abs((spec.b + I * kin.k) * r) / 2.0)));
  cplx prev = boundary + remainder_integral(f, order, rem_exp, rule, panels) / rem_denom;
  for (int d = 0; d < opt.max_doublings; ++d)
  {
    panels *= 2;
    const cplx cur = boundary + remainder_integral(f, order, rem_exp, rule, panels) / rem_denom;
    if (std::abs(cur - prev) <= opt.rel_tol * std::abs(cur))
    {
      const double norm = 1.0 / std::sqrt(pochhammer(n + 1.0, 2 * spec.l + 1).real());
      return -norm * std::pow(2.0 * spec.b * r, spec.l + 1) * (2.0 / (spec.b - I * kin.k)) * cur;
    }
    prev = cur;
  }
  std::ostringstream msg;
  msg << "qs_eval_integral: no convergence at k = " << kin.k << ", r = " << r << ", n = " << n;
  throw ConvergenceError(msg.str());
}

cplx qs_eval_expansion(const LaguerreBasisSpec &spec, int n, const Kinematics &kin, double r, int M)
{
  if (M < n + 1)
  {
    throw DomainError("qs_eval_expansion: truncation M must exceed n");
  }
  const JMatrixCoefficients co = jmatrix_coefficients(spec, kin, M);
  std::vector<double> psi(M);
  laguerre_basis_all(spec, M, r, psi.data());
  cplx sum = 0.0;
  for (int m = 0; m < M; ++m)
  {
    sum += psi[m] * co.s[std::min(m, n)] * co.c[std::max(m, n)];
  }
  return -2.0 / kin.k * sum;
}

cplx qs_asymptotic(const LaguerreBasisSpec &spec, int n, const Kinematics &kin, double r)
{
  const cplx s_red = jmatrix_coefficients(spec, kin, n + 1).s[n];
  const cplx a = spec.l + 1.0 + I * kin.beta;
  const cplx s_phase = std::exp(-0.5 * pi * kin.beta - I * kin.beta * std::log(kin.omega) + log_gamma(a));
  const cplx phase = kin.k * r - kin.beta * std::log(2.0 * kin.k * r) - 0.5 * pi * spec.l;
  return -2.0 / kin.k * s_red * s_phase * std::exp(I * phase);
}

cplx coulomb_outgoing_series(int l, cplx beta, cplx kr, double *smallest)
{
  const cplx a = -static_cast<double>(l) + I * beta;
  const cplx b = l + 1.0 + I * beta;
  const cplx x = 1.0 / (2.0 * I * kr);
  cplx sum = 0.0;
  cplx term = 1.0;
  double least = std::abs(term);
  for (int j = 0; j < 200; ++j)
  {
    sum += term;
    const cplx next = term * (a + static_cast<double>(j)) * (b + static_cast<double>(j)) / (j + 1.0) * x;
    const double size = std::abs(next);
    if (size >= least || size == 0.0)
    {
      least = std::min(least, size);
      break;
    }
    least = size;
    term = next;
  }
  if (smallest != nullptr)
  {
    *smallest = least;
  }
  return sum;
}

std::vector<cplx> qs_ladder(const JMatrixCoefficients &co, const Kinematics &kin,
                            const double *psi, cplx q0, int count)
{
  std::vector<cplx> q(count);
  cplx acc_s = 0.0;
  cplx acc_c = 0.0;
  const cplx f = -2.0 / kin.k;
  for (int n = 0; n < count; ++n)
  {
    acc_s += psi[n] * co.s[n];
    acc_c += psi[n] * co.c[n];
    q[n] = f * (co.c[n] * acc_s - co.s[n] * acc_c) + co.s[n] / co.s[0] * q0;
  }
  return q;
}

std::vector<cplx> qs_eval_all(const LaguerreBasisSpec &spec, int count, const Kinematics &kin,
                              double r, const QsIntegralOptions &opt)
{
  const double w = std::abs(kin.omega);
  if (w < opt.direct_below_omega)
  {
    // Q_n = -(2/k)[c~_n sum_{m<=n} psi_m s~_m + s~_n sum_{m>n} psi_m c~_m]
    const int extra = static_cast<int>(std::ceil(std::log(opt.direct_tail_tol) / std::log(std::max(w, 1e-3))));
    const int total = count + std::clamp(extra, 8, 2000);
    const JMatrixCoefficients co = jmatrix_coefficients(spec, kin, total);
    std::vector<double> psi(total);
    laguerre_basis_all(spec, total, r, psi.data());
    std::vector<cplx> tail(count);
    cplx acc = 0.0;
    for (int m = total - 1; m >= count; --m)
    {
      acc += psi[m] * co.c[m];
    }
    for (int n = count - 1; n >= 0; --n)
    {
      tail[n] = acc;
      acc += psi[n] * co.c[n];
    }
    std::vector<cplx> q(count);
    const cplx f = -2.0 / kin.k;
    cplx head = 0.0;
    for (int n = 0; n < count; ++n)
    {
      head += psi[n] * co.s[n];
      q[n] = f * (co.c[n] * head + co.s[n] * tail[n]);
    }
    return q;
  }
  const JMatrixCoefficients co = jmatrix_coefficients(spec, kin, count);
  std::vector<double> psi(count);
  laguerre_basis_all(spec, count, r, psi.data());
  // Q_0 = outgoing wave + a part local in r. The local part is below e^{-br}
  // beyond the basis envelope and has a 1/energy expansion for large |k|; the
  // outgoing part is below e^{-Im(k) r} or given by its asymptotic series once
  // that converges. Elsewhere the integral representation is used.
  const cplx energy = 0.5 * kin.k * kin.k;
  const bool local_negligible = spec.b * r > opt.negligible_exponent;
  cplx local_ratio = 0.0;
  const bool local_series = !local_negligible && std::abs(energy) > opt.local_energy &&
                            local_resolvent_ratio(spec.l, spec.b, kin.Z, energy, r, opt.asymptotic_tol, local_ratio);
  const bool outgoing_negligible = kin.k.imag() * r > opt.negligible_exponent;
  double smallest = 1.0;
  const cplx series = coulomb_outgoing_series(spec.l, kin.beta, kin.k * r, &smallest);
  const bool outgoing_series = smallest < opt.asymptotic_tol;
  if ((local_negligible || local_series) && (outgoing_negligible || outgoing_series))
  {
    cplx q0 = 0.0;
    if (local_series)
    {
      q0 += psi[0] / r * local_ratio;
    }
    if (!outgoing_negligible)
    {
      q0 += qs_asymptotic(spec, 0, kin, r) * series;
    }
    return qs_ladder(co, kin, psi.data(), q0, count);
  }
  return qs_ladder(co, kin, psi.data(), qs_eval_integral(spec, 0, kin, r, opt), count);
}

}  // namespace cqs
