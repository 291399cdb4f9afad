#include "cqs/driven.hpp"

#include <cmath>
#include <sstream>

#include "cqs/error.hpp"
#include "cqs/quadrature.hpp"
#include "cqs/specfun.hpp"

namespace cqs
{

namespace
{

// psi_n and d psi_n / dr at every node of a radial coordinate (N x P).
struct BasisTable
{
  Eigen::MatrixXd psi;
  Eigen::MatrixXd dpsi;
};

BasisTable tabulate(const LaguerreBasisSpec &spec, const std::vector<double> &r, bool derivs)
{
  const int n = spec.N;
  const auto p = static_cast<Eigen::Index>(r.size());
  BasisTable t;
  t.psi.resize(n, p);
  if (derivs)
  {
    t.dpsi.resize(n, p);
  }
  std::vector<double> v(n);
  std::vector<double> d(n);
  for (Eigen::Index j = 0; j < p; ++j)
  {
    laguerre_basis_all(spec, n, r[j], v.data(), derivs ? d.data() : nullptr);
    for (int i = 0; i < n; ++i)
    {
      t.psi(i, j) = v[i];
      if (derivs)
      {
        t.dpsi(i, j) = d[i];
      }
    }
  }
  return t;
}

// M[(m1 m2), (n1 n2)] = sum_p u_p A1(m1,p) B1(n1,p) A2(m2,p) B2(n2,p).
Eigen::MatrixXd pair_matrix(const Eigen::VectorXd &u, const Eigen::MatrixXd &a1, const Eigen::MatrixXd &b1,
                            const Eigen::MatrixXd &a2, const Eigen::MatrixXd &b2)
{
  const Eigen::Index n = a1.rows();
  const Eigen::Index p = a1.cols();
  Eigen::MatrixXd x(p, n * n);
  Eigen::MatrixXd y(p, n * n);
  for (Eigen::Index m = 0; m < n; ++m)
  {
    for (Eigen::Index k = 0; k < n; ++k)
    {
      x.col(m * n + k) = a1.row(m).cwiseProduct(b1.row(k)).transpose().cwiseProduct(u);
      y.col(m * n + k) = a2.row(m).cwiseProduct(b2.row(k)).transpose();
    }
  }
  const Eigen::MatrixXd mp = x.transpose() * y;  // [(m1 n1), (m2 n2)]
  Eigen::MatrixXd out(n * n, n * n);
  for (Eigen::Index m1 = 0; m1 < n; ++m1)
  {
    for (Eigen::Index n1 = 0; n1 < n; ++n1)
    {
      for (Eigen::Index m2 = 0; m2 < n; ++m2)
      {
        for (Eigen::Index n2 = 0; n2 < n; ++n2)
        {
          out(m1 * n + m2, n1 * n + n2) = mp(m1 * n + n1, m2 * n + n2);
        }
      }
    }
  }
  return out;
}

double source_constant(const TemkinPoetProblem &p)
{
  return 1.0 / std::pow(2.0 * pi, 3) * (4.0 * pi / (p.q * p.q)) * (p.Ze * p.Ze * p.Ze / pi);
}

Eigen::MatrixXcd truncated_tensor(const CqsTensor &tensor, int n)
{
  if (tensor.size() < n || tensor.rows < n)
  {
    std::ostringstream msg;
    msg << "tensor of size " << tensor.size() << " cannot serve a basis of size " << n;
    throw DomainError(msg.str());
  }
  if (tensor.size() == n && tensor.rows == n)
  {
    return tensor.entries;
  }
  Eigen::MatrixXcd g(n * n, n * n);
  for (int m1 = 0; m1 < n; ++m1)
    for (int m2 = 0; m2 < n; ++m2)
      for (int n1 = 0; n1 < n; ++n1)
        for (int n2 = 0; n2 < n; ++n2)
          g(m1 * n + m2, n1 * n + n2) = tensor(m1, m2, n1, n2);
  return g;
}

std::vector<cplx> s_values(const TemkinPoetProblem &p, double momentum)
{
  const LaguerreBasisSpec spec = p.basis();
  const Kinematics kin = kinematics(spec, momentum);
  const JMatrixCoefficients co = jmatrix_coefficients(spec, kin, p.N);
  const cplx gauge = s_gauge(spec, kin);
  std::vector<cplx> s(p.N);
  for (int n = 0; n < p.N; ++n)
  {
    s[n] = co.s[n] * gauge;
  }
  return s;
}

double amplitude_prefactor(double E, double alpha)
{
  return 2.0 * std::pow(2.0 * E, 0.75) / (E * std::sin(2.0 * alpha)) * std::sqrt(2.0 / pi);
}

}  // namespace

void TemkinPoetProblem::validate() const
{
  if (!(E > 0.0) || !(q > 0.0) || !(Ze > 0.0))
  {
    throw ConfigError("problem: E, q and Ze must be positive");
  }
  basis().validate();
}

Quadrature2D Quadrature2D::triangles(double b, int n_radial, int n_angular)
{
  const QuadratureRule lag = make_quadrature(QuadratureKind::laguerre, n_radial);
  const QuadratureRule leg = make_quadrature(QuadratureKind::legendre, n_angular);
  Quadrature2D q;
  q.r1.reserve(2 * lag.size() * leg.size());
  q.r2.reserve(q.r1.capacity());
  q.w.reserve(q.r1.capacity());
  for (std::size_t j = 0; j < leg.size(); ++j)
  {
    const double v = 0.5 * (leg.nodes[j] + 1.0);
    const double wv = 0.5 * leg.weights[j];
    const double rate = 2.0 * b * (1.0 + v);
    for (std::size_t i = 0; i < lag.size(); ++i)
    {
      const double r = lag.nodes[i] / rate;
      const double w = lag.scaled_weights[i] / rate * wv * r;
      q.r1.push_back(r);
      q.r2.push_back(v * r);
      q.w.push_back(w);
      q.r1.push_back(v * r);
      q.r2.push_back(r);
      q.w.push_back(w);
    }
  }
  return q;
}

double source_term(const TemkinPoetProblem &p, double r1, double r2)
{
  return -source_constant(p) * (2.0 - spherical_j0(p.q * r1) - spherical_j0(p.q * r2)) * r1 * r2 *
         std::exp(-p.Ze * (r1 + r2));
}

void source_moments(const TemkinPoetProblem &p, std::vector<double> &I_n, std::vector<double> &J_n,
                    int n_nodes)
{
  const LaguerreBasisSpec spec = p.basis();
  const QuadratureRule rule = make_quadrature(QuadratureKind::laguerre, n_nodes);
  const double rate = spec.b + p.Ze;
  I_n.assign(p.N, 0.0);
  J_n.assign(p.N, 0.0);
  std::vector<double> psi(p.N);
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    const double r = rule.nodes[i] / rate;
    const double w = rule.scaled_weights[i] / rate * r * std::exp(-p.Ze * r);
    laguerre_basis_all(spec, p.N, r, psi.data());
    const double j0 = spherical_j0(p.q * r);
    for (int n = 0; n < p.N; ++n)
    {
      I_n[n] += w * psi[n];
      J_n[n] += w * psi[n] * j0;
    }
  }
}

Eigen::VectorXcd rhs_vector(const TemkinPoetProblem &p)
{
  std::vector<double> in;
  std::vector<double> jn;
  source_moments(p, in, jn);
  const double c = source_constant(p);
  Eigen::VectorXcd r(p.N * p.N);
  for (int m1 = 0; m1 < p.N; ++m1)
  {
    for (int m2 = 0; m2 < p.N; ++m2)
    {
      r(m1 * p.N + m2) = -c * (2.0 * in[m1] * in[m2] - jn[m1] * in[m2] - in[m1] * jn[m2]);
    }
  }
  return r;
}

Eigen::VectorXcd rhs_vector_2d(const TemkinPoetProblem &p, const Quadrature2D &quad, const PhaseField *phase)
{
  const LaguerreBasisSpec spec = p.basis();
  const BasisTable t1 = tabulate(spec, quad.r1, false);
  const BasisTable t2 = tabulate(spec, quad.r2, false);
  const auto np = static_cast<Eigen::Index>(quad.size());
  Eigen::VectorXcd f(np);
  for (Eigen::Index j = 0; j < np; ++j)
  {
    cplx v = quad.w[j] * source_term(p, quad.r1[j], quad.r2[j]);
    if (phase != nullptr)
    {
      v *= std::exp(-I * phase->at(quad.r1[j], quad.r2[j]).W);
    }
    f(j) = v;
  }
  const Eigen::MatrixXcd r = t1.psi.cast<cplx>() * f.asDiagonal() * t2.psi.transpose().cast<cplx>();
  Eigen::VectorXcd out(p.N * p.N);
  for (int m1 = 0; m1 < p.N; ++m1)
  {
    for (int m2 = 0; m2 < p.N; ++m2)
    {
      out(m1 * p.N + m2) = r(m1, m2);
    }
  }
  return out;
}

Eigen::MatrixXd v_matrix(const TemkinPoetProblem &p, const Quadrature2D &quad)
{
  const LaguerreBasisSpec spec = p.basis();
  const BasisTable t1 = tabulate(spec, quad.r1, false);
  const BasisTable t2 = tabulate(spec, quad.r2, false);
  Eigen::VectorXd u(quad.size());
  for (std::size_t j = 0; j < quad.size(); ++j)
  {
    u(j) = quad.w[j] / std::max(quad.r1[j], quad.r2[j]);
  }
  return pair_matrix(u, t1.psi, t1.psi, t2.psi, t2.psi);
}

Eigen::MatrixXcd u_matrix(const TemkinPoetProblem &p, const Quadrature2D &quad, const PhaseField &phase)
{
  const LaguerreBasisSpec spec = p.basis();
  const BasisTable t1 = tabulate(spec, quad.r1, true);
  const BasisTable t2 = tabulate(spec, quad.r2, true);
  const auto np = static_cast<Eigen::Index>(quad.size());
  Eigen::VectorXd re(np);
  Eigen::VectorXd im(np);
  Eigen::VectorXd d1(np);
  Eigen::VectorXd d2(np);
  for (Eigen::Index j = 0; j < np; ++j)
  {
    const PhaseDerivatives w = phase.at(quad.r1[j], quad.r2[j]);
    const double wt = quad.w[j];
    re(j) = wt * (1.0 / std::max(quad.r1[j], quad.r2[j]) + 0.5 * (w.W1 * w.W1 + w.W2 * w.W2));
    im(j) = -0.5 * wt * (w.W11 + w.W22);
    d1(j) = -wt * w.W1;
    d2(j) = -wt * w.W2;
  }
  Eigen::MatrixXcd u = pair_matrix(re, t1.psi, t1.psi, t2.psi, t2.psi).cast<cplx>();
  if (phase.enabled())
  {
    const Eigen::MatrixXd imag = pair_matrix(im, t1.psi, t1.psi, t2.psi, t2.psi) +
                                 pair_matrix(d1, t1.psi, t1.dpsi, t2.psi, t2.psi) +
                                 pair_matrix(d2, t1.psi, t1.psi, t2.psi, t2.dpsi);
    u += I * imag.cast<cplx>();
  }
  return u;
}

DrivenSolution solve_linear(const Eigen::MatrixXcd &M, const CqsTensor &tensor, const Eigen::VectorXcd &R,
                            bool modified)
{
  const int n2 = static_cast<int>(R.size());
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
  const Eigen::MatrixXcd g = truncated_tensor(tensor, n);
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n2, n2) - M * g;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  DrivenSolution sol;
  sol.modified = modified;
  sol.rcond = lu.rcond();
  if (!(sol.rcond > 1e-14))
  {
    std::ostringstream msg;
    msg << "driven solve: system is numerically singular (reciprocal condition " << sol.rcond << ")";
    throw ConvergenceError(msg.str());
  }
  const Eigen::VectorXcd c = lu.solve(R);
  sol.residual = (a * c - R).cwiseAbs().maxCoeff();
  sol.coefficients.resize(n, n);
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      sol.coefficients(i, j) = c(i * n + j);
    }
  }
  return sol;
}

DrivenSolution solve_plain(const TemkinPoetProblem &p, const CqsTensor &tensor, const DrivenOptions &opt)
{
  p.validate();
  const Quadrature2D quad = Quadrature2D::triangles(p.b, opt.n_radial, opt.n_angular);
  return solve_linear(v_matrix(p, quad).cast<cplx>(), tensor, rhs_vector(p), false);
}

DrivenSolution solve_modified(const TemkinPoetProblem &p, const CqsTensor &tensor, const PhaseField &phase,
                              const DrivenOptions &opt)
{
  p.validate();
  const Quadrature2D quad = Quadrature2D::triangles(p.b, opt.n_radial, opt.n_angular);
  return solve_linear(u_matrix(p, quad, phase), tensor, rhs_vector_2d(p, quad, &phase), true);
}

cplx amplitude_sum(const DrivenSolution &sol, const TemkinPoetProblem &p, double alpha)
{
  const double s = std::sqrt(2.0 * p.E);
  const std::vector<cplx> s1 = s_values(p, std::cos(alpha) * s);
  const std::vector<cplx> s2 = s_values(p, std::sin(alpha) * s);
  const int n = static_cast<int>(sol.coefficients.rows());
  cplx sum = 0.0;
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      sum += sol.coefficients(i, j) * s1[i] * s2[j];
    }
  }
  return sum;
}

double magnitude_A(const DrivenSolution &sol, const TemkinPoetProblem &p, double alpha)
{
  return amplitude_prefactor(p.E, alpha) * std::abs(amplitude_sum(sol, p, alpha));
}

double magnitude_A_modified(const DrivenSolution &sol, const TemkinPoetProblem &p, double alpha)
{
  return magnitude_A(sol, p, alpha);
}

cplx asymptotic_solution(const DrivenSolution &sol, const TemkinPoetProblem &p, const HypersphericalPoint &pt)
{
  const double alpha = pt.alpha();
  const double rho = pt.rho();
  const double s = std::sqrt(2.0 * p.E);
  const double p1 = pt.p1(p.E);
  const double p2 = pt.p2(p.E);
  const cplx sigma1 = log_gamma(1.0 - 2.0 * I / p1).imag();
  const cplx sigma2 = log_gamma(1.0 - 2.0 * I / p2).imag();
  // beta_i = -2 / p_i
  const cplx phase = s * rho + (2.0 / p1) * std::log(2.0 * p1 * pt.r1) + (2.0 / p2) * std::log(2.0 * p2 * pt.r2) +
                     sigma1 + sigma2 + pi / 4.0;
  cplx value = amplitude_prefactor(p.E, alpha) * amplitude_sum(sol, p, alpha) * std::exp(I * phase);
  if (sol.modified)
  {
    const double rg = std::max(pt.r1, pt.r2);
    value *= std::exp(-I * (rho / s) / rg * std::log(2.0 * s * rho));
  }
  return value;
}

cplx solution_scaled(const DrivenSolution &sol, const Eigen::MatrixXcd &Q, const HypersphericalPoint &pt,
                     const PhaseField &phase)
{
  const Eigen::Index n = sol.coefficients.rows();
  const cplx chi = sol.coefficients.cwiseProduct(Q.topLeftCorner(n, n)).sum();
  cplx value = chi * std::sqrt(pt.rho()) * 2.0 / std::sin(2.0 * pt.alpha());
  if (sol.modified)
  {
    value *= std::exp(I * phase.at(pt.r1, pt.r2).W);
  }
  return value;
}

Eigen::MatrixXcd effective_potential(const LaguerreBasisSpec &spec, int count, const HypersphericalPoint &pt,
                                     const std::vector<ContourNode> &nodes, const PhaseField &phase, double h,
                                     const QsIntegralOptions &opt)
{
  const auto q_at = [&](double r1, double r2) -> Eigen::MatrixXcd {
    return cqs_eval_contour_all(spec, spec, count, {r1, r2}, nodes, opt);
  };
  const Eigen::MatrixXcd q0 = q_at(pt.r1, pt.r2);
  const auto stencil = [&](bool first) -> Eigen::MatrixXcd {
    const auto shifted = [&](double d) -> Eigen::MatrixXcd {
      return first ? q_at(pt.r1 + d, pt.r2) : q_at(pt.r1, pt.r2 + d);
    };
    return ((shifted(-2.0 * h) - shifted(2.0 * h)) + 8.0 * (shifted(h) - shifted(-h))) / (12.0 * h);
  };
  const Eigen::MatrixXcd dq1 = stencil(true);
  const Eigen::MatrixXcd dq2 = stencil(false);
  const PhaseDerivatives w = phase.at(pt.r1, pt.r2);
  const cplx local = 1.0 / std::max(pt.r1, pt.r2) + 0.5 * (w.W1 * w.W1 + w.W2 * w.W2) - 0.5 * I * (w.W11 + w.W22);
  Eigen::MatrixXcd out(count, count);
  for (int a = 0; a < count; ++a)
  {
    for (int c = 0; c < count; ++c)
    {
      if (std::abs(q0(a, c)) < 1e-300)
      {
        throw DomainError("effective_potential: CQS function vanishes at the evaluation point");
      }
      out(a, c) = local - I * (w.W1 * dq1(a, c) + w.W2 * dq2(a, c)) / q0(a, c);
    }
  }
  return out;
}

double effective_potential_asymptote(double E, double rho)
{
  const double s = std::sqrt(2.0 * E);
  const double x = std::log(2.0 * s * rho) / (s * rho);
  return x * x;
}

}  // namespace cqs
