#include <doctest.h>

#include "cqs/acceptance.hpp"
#include "cqs/contour.hpp"
#include "cqs/error.hpp"
#include "cqs/jmatrix.hpp"
#include "cqs/qs1p.hpp"
#include "cqs/specfun.hpp"
#include "oracles.hpp"

using namespace cqs;
using oracle::cld;
using oracle::ld;

namespace
{

const double b0 = 1.6875;
const double k_on_shell = 0.857321;  // sqrt(0.735)

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

cld L(cplx z) { return {z.real(), z.imag()}; }
cplx D(cld z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

/// S_n^0(k) from its closed form in extended precision.
cld s_oracle(int n, cld k, ld b)
{
  const cld ik = cld(0, 1) * k;
  const cld w = (b + ik) / (b - ik);
  const cld sin_xi = 2.0L * b * k / (b * b + k * k);
  const cld beta = -2.0L / k;
  const cld ib = cld(0, 1) * beta;
  const ld poch = n + 1;  // (n+1)_1
  const cld gauge = std::exp(-oracle::pi_ld * beta / 2.0L - ib * std::log(w)) * std::abs(oracle::gamma(1.0L + ib));
  cld minus_w_n = 1;
  for (int j = 0; j < n; ++j)
  {
    minus_w_n *= -w;
  }
  return 0.5L * std::sqrt(poch) * 2.0L * sin_xi * gauge * minus_w_n *
         oracle::hyp2f1_terminating(n, 1.0L + ib, 2.0L, 1.0L - 1.0L / (w * w));
}

/// C^(+)_n^0(k) from its closed form with the normalization sqrt(n! (n+1)!).
cld c_oracle(int n, cld k, ld b)
{
  const cld ik = cld(0, 1) * k;
  const cld w = (b + ik) / (b - ik);
  const cld beta = -2.0L / k;
  const cld ib = cld(0, 1) * beta;
  ld norm = 1;
  for (int j = 1; j <= n; ++j)
  {
    norm *= ld(j) * ld(j);
  }
  norm = std::sqrt(norm * (n + 1));
  const cld g1 = oracle::gamma(1.0L + ib);
  cld minus_w = 1;
  for (int j = 0; j <= n; ++j)
  {
    minus_w *= -w;
  }
  return -norm * std::exp(oracle::pi_ld * beta / 2.0L + ib * std::log(w)) * (g1 / std::abs(g1)) * minus_w /
         oracle::gamma(ld(n) + 2.0L + ib) * oracle::hyp2f1_series(ib, ld(n + 1), ld(n) + 2.0L + ib, w * w);
}

}  // namespace

TEST_SUITE("jmatrix")
{
  TEST_CASE("Laguerre basis values")
  {
    const LaguerreBasisSpec s{1.0, 0, 10};
    CHECK(laguerre_basis_eval(s, 0, 1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-15));
    for (int n = 0; n < 10; ++n)
    {
      CHECK(laguerre_basis_eval(s, n, 0.0) == 0.0);
    }
    // derivative by central difference
    const LaguerreBasisSpec p{b0, 0, 12};
    for (int n : {0, 3, 11})
    {
      const double h = 1e-5, r = 2.3;
      const double fd = (laguerre_basis_eval(p, n, r + h) - laguerre_basis_eval(p, n, r - h)) / (2 * h);
      CHECK(laguerre_basis_deriv(p, n, r) == doctest::Approx(fd).epsilon(1e-8));
    }
  }

  TEST_CASE("orthogonality with weight 1/r")
  {
    CHECK(orthogonality_error({b0, 0, 30}, 30) < 1e-10);
    CHECK(orthogonality_error({0.7, 0, 30}, 30) < 1e-10);
    CHECK(orthogonality_error({b0, 2, 20}, 20) < 1e-10);
  }

  TEST_CASE("kinematics")
  {
    const LaguerreBasisSpec s{b0, 0, 5};
    const auto kin = kinematics(s, k_on_shell);
    CHECK(std::abs(std::abs(kin.omega) - 1.0) < 1e-15);
    CHECK(kin.beta.real() == doctest::Approx(-2.33284).epsilon(1e-5));
    CHECK(std::abs(kinematics(s, I * b0 * (1.0 + 1e-9)).omega) < 1e-8);
    CHECK_THROWS_AS(kinematics(s, I * b0), DomainError);
    CHECK_THROWS_AS(kinematics(s, 0.0), DomainError);
  }

  TEST_CASE("S coefficient")
  {
    const LaguerreBasisSpec s{b0, 0, 25};
    const auto kin = kinematics(s, k_on_shell);
    // n = 0 closed form
    const cplx expect0 = kin.sin_xi * std::exp(-pi * kin.beta / 2.0 - I * kin.beta * std::log(kin.omega)) *
                         std::sqrt(pi * kin.beta.real() / std::sinh(pi * kin.beta.real()));
    CHECK(rel(s_coefficient(s, 0, kin), expect0) < 1e-13);
    CHECK(rel(s_coefficient(s, 5, kin), D(s_oracle(5, k_on_shell, b0))) < 1e-12);
    for (double k : {0.3, k_on_shell, 2.0})
    {
      const auto kk = kinematics(s, k);
      for (int n = 0; n <= 20; ++n)
      {
        const cplx v = s_coefficient(s, n, kk);
        CHECK(std::abs(v.imag()) <= 1e-10 * std::abs(v));
        CHECK(rel(v, D(s_oracle(n, k, b0))) < 1e-11);
      }
    }
  }

  TEST_CASE("C+ coefficient at a complex momentum")
  {
    const LaguerreBasisSpec s{b0, 0, 10};
    const cplx k(0.3, 0.4);
    const auto kin = kinematics(s, k);
    for (int n = 0; n < 6; ++n)
    {
      CHECK(rel(c_plus_coefficient(s, n, kin), D(c_oracle(n, L(k), b0))) < 1e-10);
    }
    // the Gamma phase factor has unit modulus for real k
    const auto real_kin = kinematics(s, k_on_shell);
    const cplx g = gamma_complex(1.0 + I * real_kin.beta);
    CHECK(std::abs(std::abs(g / std::abs(g)) - 1.0) < 1e-12);
  }

  TEST_CASE("Green's matrix symmetry and defining identity")
  {
    const LaguerreBasisSpec s{b0, 0, 20};
    for (cplx k : sample_contour_momenta(0.735, 0.85))
    {
      const auto g = green_matrix_1p(s, kinematics(s, k));
      CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(resolvent_identity_error(s, k) < 1e-8);
    }
    // the closed-form tridiagonal matrix agrees with the quadrature oracle
    const cplx e(0.4, -0.2);
    const Eigen::MatrixXcd t1 = hamiltonian_tridiagonal(s, e, 20, 21);
    const Eigen::MatrixXcd t2 = hamiltonian_by_quadrature(s, e, 20, 21);
    CHECK((t1 - t2).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("Green's matrix is analytic along a contour")
  {
    const LaguerreBasisSpec s{b0, 0, 8};
    const auto g_at = [&](double t) {
      const cplx e = c2_point(t, 0.735, 0.85);
      const cplx k = std::sqrt(2.0 * e);  // principal root is continuous along this stretch
      return green_matrix_1p(s, kinematics(s, k))(3, 5);
    };
    const auto deriv = [&](double t, double h) { return (g_at(t + h) - g_at(t - h)) / (2.0 * h); };
    for (double t : {-1.5, 0.1, 1.3})
    {
      const cplx d1 = deriv(t, 0.02), d2 = deriv(t, 0.01), d3 = deriv(t, 0.005);
      const double ratio = std::abs(d1 - d2) / std::abs(d2 - d3);
      CHECK(ratio > 3.5);
      CHECK(ratio < 4.5);
    }
  }

  TEST_CASE("Laguerre expansion of Q agrees with the integral representation")
  {
    const LaguerreBasisSpec s{b0, 0, 60};
    const auto kin = kinematics(s, cplx(0.3, 0.4));
    for (int n : {0, 2, 7})
    {
      CHECK(rel(qs_eval_expansion(s, n, kin, 2.0, 60), qs_eval_integral(s, n, kin, 2.0)) < 1e-6);
    }
  }
}
