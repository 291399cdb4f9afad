#include "cqs/cqs2p.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "cqs/error.hpp"
#include "cqs/specfun.hpp"

namespace cqs
{

namespace
{

// Partial sums are formed over this many fixed node chunks regardless of the
// thread count, which keeps the reduction order (and the bits) reproducible.
constexpr int reduction_chunks = 8;

int resolve_threads(int threads)
{
  if (threads > 0)
  {
    return threads;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(chunk) for chunk = 0..chunks-1 on up to `threads` workers.
void run_chunks(int chunks, int threads, const std::function<void(int)> &body)
{
  threads = std::min(threads, chunks);
  if (threads <= 1)
  {
    for (int c = 0; c < chunks; ++c)
    {
      body(c);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t)
  {
    pool.emplace_back([&, t] {
      try
      {
        for (int c = t; c < chunks; c += threads)
        {
          body(c);
        }
      }
      catch (...)
      {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto &th : pool)
  {
    th.join();
  }
  for (const auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

// S e^{i sigma} continued analytically: s~ e^{-pi beta/2} w^{-i beta} Gamma(l+1+i beta).
cplx s_times_coulomb_phase(const LaguerreBasisSpec &spec, int n, const Kinematics &kin)
{
  const cplx a = spec.l + 1.0 + I * kin.beta;
  return jmatrix_coefficients(spec, kin, n + 1).s[n] *
         std::exp(-0.5 * pi * kin.beta - I * kin.beta * std::log(kin.omega) + log_gamma(a));
}

}  // namespace

CqsTensor build_tensor(double E, const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2,
                       const ContourSpec &contour, int rows, int threads)
{
  spec1.validate();
  spec2.validate();
  if (spec1.N != spec2.N)
  {
    throw DomainError("build_tensor: both channels must have the same basis size");
  }
  if (std::abs(contour.E - E) > 1e-15 * std::max(1.0, E))
  {
    throw DomainError("build_tensor: contour energy differs from the tensor energy");
  }
  const int n = spec1.N;
  if (rows < 0)
  {
    rows = n;
  }
  const std::vector<ContourNode> nodes = discretize(contour);
  const int chunks = std::min<int>(reduction_chunks, static_cast<int>(nodes.size()));
  std::vector<Eigen::MatrixXcd> partial(chunks);

  run_chunks(chunks, resolve_threads(threads), [&](int c) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rows * rows, n * n);
    const std::size_t lo = nodes.size() * c / chunks;
    const std::size_t hi = nodes.size() * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i)
    {
      const ContourNode &node = nodes[i];
      const GreenMatrix1p g1 = node.weight * green_matrix_1p(spec1, kinematics(spec1, node.k1.value), rows);
      const GreenMatrix1p g2 = green_matrix_1p(spec2, kinematics(spec2, node.k2.value), rows);
      for (int m1 = 0; m1 < rows; ++m1)
      {
        for (int n1 = 0; n1 < n; ++n1)
        {
          acc.block(m1 * rows, n1 * n, rows, n).noalias() += g1(m1, n1) * g2;
        }
      }
    }
    partial[c] = std::move(acc);
  });

  CqsTensor t;
  t.E = E;
  t.spec1 = spec1;
  t.spec2 = spec2;
  t.rows = rows;
  t.contour = contour.canonical();
  t.entries = partial[0];
  for (int c = 1; c < chunks; ++c)
  {
    t.entries += partial[c];
  }
  return t;
}

HypersphericalPoint HypersphericalPoint::from_polar(double rho, double alpha)
{
  return {rho * std::cos(alpha), rho * std::sin(alpha)};
}

double HypersphericalPoint::rho() const { return std::hypot(r1, r2); }

double HypersphericalPoint::alpha() const { return std::atan2(r2, r1); }

double HypersphericalPoint::p1(double E) const { return std::cos(alpha()) * std::sqrt(2.0 * E); }

double HypersphericalPoint::p2(double E) const { return std::sin(alpha()) * std::sqrt(2.0 * E); }

double stationary_point(double alpha, double E)
{
  const double c = std::cos(alpha);
  return c * c * E;
}

cplx cqs_eval_expansion(const CqsTensor &tensor, int n1, int n2, const HypersphericalPoint &pt, int M)
{
  if (M > tensor.rows)
  {
    throw DomainError("cqs_eval_expansion: truncation exceeds the tensor dimension");
  }
  std::vector<double> psi1(M);
  std::vector<double> psi2(M);
  laguerre_basis_all(tensor.spec1, M, pt.r1, psi1.data());
  laguerre_basis_all(tensor.spec2, M, pt.r2, psi2.data());
  cplx sum = 0.0;
  for (int m1 = 0; m1 < M; ++m1)
  {
    for (int m2 = 0; m2 < M; ++m2)
    {
      sum += psi1[m1] * psi2[m2] * tensor(m1, m2, n1, n2);
    }
  }
  return sum;
}

Eigen::MatrixXcd cqs_eval_contour_all(const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2,
                                      int count, const HypersphericalPoint &pt,
                                      const std::vector<ContourNode> &nodes,
                                      const QsIntegralOptions &opt)
{
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(count, count);
  if (pt.r1 == 0.0 || pt.r2 == 0.0)
  {
    return sum;
  }
  for (const ContourNode &node : nodes)
  {
    const Kinematics kin1 = kinematics(spec1, node.k1.value);
    const Kinematics kin2 = kinematics(spec2, node.k2.value);
    const std::vector<cplx> q1 = qs_eval_all(spec1, count, kin1, pt.r1, opt);
    const std::vector<cplx> q2 = qs_eval_all(spec2, count, kin2, pt.r2, opt);
    for (int a = 0; a < count; ++a)
    {
      const cplx wa = node.weight * q1[a];
      for (int c = 0; c < count; ++c)
      {
        sum(a, c) += wa * q2[c];
      }
    }
  }
  return sum;
}

cplx cqs_eval_contour(const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2, int n1, int n2,
                      const HypersphericalPoint &pt, const ContourSpec &contour,
                      const QsIntegralOptions &opt)
{
  if (contour.kind != ContourKind::rational_deformation)
  {
    throw DomainError(
        "cqs_eval_contour: requires the C2 contour; on C1 the one-particle functions grow "
        "exponentially in r along the lower half-line");
  }
  const int count = std::max(n1, n2) + 1;
  return cqs_eval_contour_all(spec1, spec2, count, pt, discretize(contour), opt)(n1, n2);
}

cplx b_normalizer(const LaguerreBasisSpec &spec, int n, const Kinematics &kin)
{
  const int l = spec.l;
  const cplx w = kin.omega;
  const double poch = pochhammer(n + 1.0, 2 * l + 1).real();
  return std::sqrt(poch) * std::pow(-w, n) *
         hyp2f1(-static_cast<double>(n), l + 1.0 + I * kin.beta, 2.0 * l + 2.0, 1.0 - 1.0 / (w * w));
}

cplx cqs_asymptotic(const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2, int n1, int n2,
                    const HypersphericalPoint &pt, double E)
{
  const double rho = pt.rho();
  const double p1 = pt.p1(E);
  const double p2 = pt.p2(E);
  const Kinematics kin1 = kinematics(spec1, p1);
  const Kinematics kin2 = kinematics(spec2, p2);
  const cplx phase = std::sqrt(2.0 * E) * rho - kin1.beta * std::log(2.0 * p1 * pt.r1) -
                     kin2.beta * std::log(2.0 * p2 * pt.r2) - 0.5 * pi * (spec1.l + spec2.l);
  return std::sqrt(2.0 / pi) * std::pow(2.0 * E, 0.75) / E * std::exp(I * pi / 4.0) *
         s_times_coulomb_phase(spec1, n1, kin1) * s_times_coulomb_phase(spec2, n2, kin2) /
         std::sqrt(rho) * std::exp(I * phase);
}

}  // namespace cqs
