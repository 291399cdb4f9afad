#include <doctest.h>

#include <chrono>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cqs/driven.hpp"
#include "cqs/error.hpp"
#include "cqs/specfun.hpp"

using namespace cqs;
using boost::math::quadrature::gauss_kronrod;

namespace
{

const double E0 = 0.735;

TemkinPoetProblem problem(int n)
{
  TemkinPoetProblem p;
  p.N = n;
  return p;
}

const CqsTensor &small_tensor()
{
  static const CqsTensor t = [] {
    ContourSpec c;
    c.E = E0;
    c.panels = 128;
    const LaguerreBasisSpec s{1.6875, 0, 6};
    return build_tensor(E0, s, s, c);
  }();
  return t;
}

template <class F>
double integrate_half_line(F f)
{
  return gauss_kronrod<double, 61>::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13);
}

// int_0^inf dx int_0^1 dv x f(x, v x): the triangle r2 < r1 (swap for the other half).
template <class F>
cplx integrate_triangle(F f, bool swap)
{
  const auto part = [&](bool imag) {
    return gauss_kronrod<double, 31>::integrate(
        [&](double v) {
          return integrate_half_line([&](double x) {
            const cplx val = swap ? f(v * x, x) : f(x, v * x);
            return x * (imag ? val.imag() : val.real());
          });
        },
        0.0, 1.0, 10, 1e-12);
  };
  return {part(false), part(true)};
}

}  // namespace

TEST_SUITE("driven")
{
  TEST_CASE("source moments against adaptive quadrature")
  {
    const auto p = problem(12);
    std::vector<double> in, jn;
    source_moments(p, in, jn);
    const auto s = p.basis();
    for (int n : {0, 1, 5, 11})
    {
      const double ie = integrate_half_line(
          [&](double r) { return laguerre_basis_eval(s, n, r) * r * std::exp(-p.Ze * r); });
      const double je = integrate_half_line([&](double r) {
        return laguerre_basis_eval(s, n, r) * r * std::exp(-p.Ze * r) * spherical_j0(p.q * r);
      });
      CHECK(std::abs(in[n] - ie) < 1e-10 * std::max(1.0, std::abs(ie)));
      CHECK(std::abs(jn[n] - je) < 1e-10 * std::max(1.0, std::abs(je)));
    }
  }

  TEST_CASE("source vector: separable and two-dimensional forms agree")
  {
    const auto p = problem(8);
    const auto quad = Quadrature2D::triangles(p.b, 90, 48);
    const Eigen::VectorXcd a = rhs_vector(p);
    const Eigen::VectorXcd b = rhs_vector_2d(p, quad);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12 * a.cwiseAbs().maxCoeff());
    // the source is symmetric under exchange
    for (int m1 = 0; m1 < 8; ++m1)
      for (int m2 = 0; m2 < 8; ++m2)
        CHECK(std::abs(a(m1 * 8 + m2) - a(m2 * 8 + m1)) < 1e-15 * a.cwiseAbs().maxCoeff());
  }

  TEST_CASE("interaction matrix")
  {
    const int n = 6;
    const auto p = problem(n);
    const auto quad = Quadrature2D::triangles(p.b, 90, 48);
    const Eigen::MatrixXd v = v_matrix(p, quad);
    // <00|1/r>|00> = 5 / (8 b)
    CHECK(v(0, 0) == doctest::Approx(5.0 / (8.0 * p.b)).epsilon(1e-13));
    CHECK((v - v.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    for (int m1 = 0; m1 < n; ++m1)
      for (int m2 = 0; m2 < n; ++m2)
        for (int n1 = 0; n1 < n; ++n1)
          for (int n2 = 0; n2 < n; ++n2)
            CHECK(std::abs(v(m1 * n + m2, n1 * n + n2) - v(m2 * n + m1, n2 * n + n1)) < 1e-14);
    // a disabled phase reduces U to V
    const Eigen::MatrixXcd u0 = u_matrix(p, quad, PhaseField(E0, false));
    CHECK((u0 - v.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("modified interaction: exchange symmetry and an adaptive-quadrature value")
  {
    const int n = 4;
    const auto p = problem(n);
    const PhaseField phase(E0);
    const Eigen::MatrixXcd u = u_matrix(p, Quadrature2D::triangles(p.b, 90, 48), phase);
    for (int m1 = 0; m1 < n; ++m1)
      for (int m2 = 0; m2 < n; ++m2)
        for (int n1 = 0; n1 < n; ++n1)
          for (int n2 = 0; n2 < n; ++n2)
            CHECK(std::abs(u(m1 * n + m2, n1 * n + n2) - u(m2 * n + m1, n2 * n + n1)) < 1e-13);

    const auto s = p.basis();
    const int m1 = 0, m2 = 1, n1 = 1, n2 = 2;
    const auto integrand = [&](double r1, double r2) -> cplx {
      const PhaseDerivatives w = phase.at(r1, r2);
      const double a1 = laguerre_basis_eval(s, m1, r1), a2 = laguerre_basis_eval(s, m2, r2);
      const double b1 = laguerre_basis_eval(s, n1, r1), b2 = laguerre_basis_eval(s, n2, r2);
      const double d1 = laguerre_basis_deriv(s, n1, r1), d2 = laguerre_basis_deriv(s, n2, r2);
      const cplx local = 1.0 / std::max(r1, r2) + 0.5 * (w.W1 * w.W1 + w.W2 * w.W2) - 0.5 * I * (w.W11 + w.W22);
      return a1 * a2 * (local * b1 * b2 - I * (w.W1 * d1 * b2 + w.W2 * b1 * d2));
    };
    const cplx expect = integrate_triangle(integrand, false) + integrate_triangle(integrand, true);
    CHECK(std::abs(u(m1 * n + m2, n1 * n + n2) - expect) < 1e-6 * std::abs(expect));
  }

  TEST_CASE("phase field")
  {
    const PhaseField w(E0);
    CHECK(w.at(0.0, 0.0).W == 0.0);
    CHECK(PhaseField(E0, false).at(3.0, 4.0).W == 0.0);
    CHECK_THROWS_AS(PhaseField(0.0), DomainError);
    // continuous across the diagonal
    CHECK(std::abs(w.at(5.0 + 1e-9, 5.0).W - w.at(5.0, 5.0 + 1e-9).W) < 1e-8);
    // symmetric under exchange
    CHECK(w.at(2.0, 7.0).W == doctest::Approx(w.at(7.0, 2.0).W).epsilon(1e-15));
    // analytic derivatives against central differences away from the diagonal
    const double h = 1e-4;
    for (auto [r1, r2] : {std::pair{3.0, 1.0}, std::pair{0.5, 8.0}, std::pair{40.0, 25.0}})
    {
      const auto d = w.at(r1, r2);
      const double f1 = (w.at(r1 + h, r2).W - w.at(r1 - h, r2).W) / (2 * h);
      const double f2 = (w.at(r1, r2 + h).W - w.at(r1, r2 - h).W) / (2 * h);
      const double f11 = (w.at(r1 + h, r2).W1 - w.at(r1 - h, r2).W1) / (2 * h);
      const double f22 = (w.at(r1, r2 + h).W2 - w.at(r1, r2 - h).W2) / (2 * h);
      CHECK(d.W1 == doctest::Approx(f1).epsilon(1e-7));
      CHECK(d.W2 == doctest::Approx(f2).epsilon(1e-7));
      CHECK(d.W11 == doctest::Approx(f11).epsilon(1e-6));
      CHECK(d.W22 == doctest::Approx(f22).epsilon(1e-6));
    }
  }

  TEST_CASE("single-function basis has a closed-form solution")
  {
    const auto p = problem(1);
    const auto quad = Quadrature2D::triangles(p.b, 90, 48);
    const DrivenSolution sol = solve_plain(p, small_tensor());
    const cplx v = v_matrix(p, quad)(0, 0);
    const cplx g = small_tensor()(0, 0, 0, 0);
    const cplx r = rhs_vector(p)(0);
    CHECK(std::abs(sol.coefficients(0, 0) - r / (1.0 - v * g)) < 1e-14 * std::abs(r));
  }

  TEST_CASE("solutions are exchange symmetric and solve their systems")
  {
    const auto p = problem(6);
    const PhaseField phase(E0);
    for (const auto &sol : {solve_plain(p, small_tensor()), solve_modified(p, small_tensor(), phase)})
    {
      const auto &c = sol.coefficients;
      CHECK((c - c.transpose()).cwiseAbs().maxCoeff() < 1e-12 * c.cwiseAbs().maxCoeff());
      CHECK(sol.residual < 1e-10 * c.cwiseAbs().maxCoeff());
      CHECK(sol.rcond > 1e-6);
    }
    CHECK_THROWS_AS(solve_plain(problem(7), small_tensor()), DomainError);
  }

  TEST_CASE("modified solver with a vanishing phase reproduces the plain solver")
  {
    const auto p = problem(6);
    const auto plain = solve_plain(p, small_tensor());
    const auto flat = solve_modified(p, small_tensor(), PhaseField(E0, false));
    CHECK((plain.coefficients - flat.coefficients).cwiseAbs().maxCoeff() <
          1e-10 * plain.coefficients.cwiseAbs().maxCoeff());
    CHECK(magnitude_A(plain, p, pi / 4.0) == doctest::Approx(magnitude_A_modified(flat, p, pi / 4.0)).epsilon(1e-10));
  }

  TEST_CASE("asymptotic forms")
  {
    const auto p = problem(6);
    const auto plain = solve_plain(p, small_tensor());
    const auto mod = solve_modified(p, small_tensor(), PhaseField(E0));
    for (double alpha : {0.5, pi / 4.0})
    {
      const auto pt = HypersphericalPoint::from_polar(50.0, alpha);
      // rho^{5/2}-scaled asymptote carries |A| and a pure phase
      const double scale = std::abs(asymptotic_solution(plain, p, pt));
      CHECK(scale == doctest::Approx(magnitude_A(plain, p, alpha)).epsilon(1e-13));
      CHECK(std::abs(asymptotic_solution(mod, p, pt)) == doctest::Approx(magnitude_A_modified(mod, p, alpha)).epsilon(1e-13));
      // the solution value keeps |.| when the phase is switched off
      const DrivenSolution plain_flagged = [&] {
        auto s = mod;
        s.modified = false;
        return s;
      }();
      const Eigen::MatrixXcd q = Eigen::MatrixXcd::Constant(6, 6, cplx(0.3, -0.2));
      CHECK(std::abs(solution_scaled(mod, q, pt, PhaseField(E0))) ==
            doctest::Approx(std::abs(solution_scaled(plain_flagged, q, pt, PhaseField(E0)))).epsilon(1e-13));
    }
    CHECK(effective_potential_asymptote(E0, 100.0) ==
          doctest::Approx(std::pow(std::log(2.0 * std::sqrt(2 * E0) * 100.0) / (std::sqrt(2 * E0) * 100.0), 2)));
  }

  TEST_CASE("effective potential stays below the bare interaction")
  {
    ContourSpec c;
    c.kind = ContourKind::rational_deformation;
    c.E = E0;
    c.extent = 1e6;
    c.panels = 96;
    const auto nodes = discretize(c);
    const LaguerreBasisSpec s{1.6875, 0, 2};
    for (double rho : {25.0, 40.0})
    {
      const auto pt = HypersphericalPoint::from_polar(rho, pi / 4.0);
      const Eigen::MatrixXcd u = effective_potential(s, 2, pt, nodes, PhaseField(E0));
      CHECK(u.cwiseAbs().maxCoeff() < 1.0 / std::max(pt.r1, pt.r2));
      // with W = 0 it is exactly the bare interaction
      const Eigen::MatrixXcd u0 = effective_potential(s, 2, pt, nodes, PhaseField(E0, false));
      CHECK((u0.array() - 1.0 / std::max(pt.r1, pt.r2)).abs().maxCoeff() < 1e-15);
    }
  }

  TEST_CASE("small basis solves quickly")
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto sol = solve_plain(problem(2), small_tensor());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 1.0);
    CHECK(std::isfinite(magnitude_A(sol, problem(2), pi / 4.0)));
  }

  TEST_CASE("problem validation")
  {
    auto p = problem(4);
    p.q = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = problem(4);
    p.b = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
  }
}
