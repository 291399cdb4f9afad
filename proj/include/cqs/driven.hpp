#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cqs/cqs2p.hpp"
#include "cqs/phase.hpp"

namespace cqs
{

/// s-wave Temkin-Poet model of He (e,3e): bound-state charge Ze, transferred momentum q.
struct TemkinPoetProblem
{
  double E = 0.735;
  double q = 0.24;
  double Ze = 2.0 - 5.0 / 16.0;
  double b = 2.0 - 5.0 / 16.0;
  int N = 16;

  LaguerreBasisSpec basis() const { return {b, 0, N}; }
  void validate() const;
};

/// Product rule for double integrals over the quadrant, split along the diagonal:
/// on r2 = v r1 (and mirrored) Gauss-Laguerre in r1 with decay rate 2b(1+v) and
/// Gauss-Legendre in v on [0, 1]. Integrals of psi_m1 psi_m2 f psi_n1 psi_n2 are
/// exact when f is a polynomial of modest degree or 1/r>, since the basis
/// envelope e^{-b(r1+r2)} is absorbed by the Laguerre weight.
struct Quadrature2D
{
  std::vector<double> r1;
  std::vector<double> r2;
  std::vector<double> w;

  static Quadrature2D triangles(double b, int n_radial, int n_angular);
  std::size_t size() const { return w.size(); }
};

struct DrivenOptions
{
  int n_radial = 90;
  int n_angular = 48;
};

/// Source term F(r1, r2) = -c [2 - j0(q r1) - j0(q r2)] r1 r2 e^{-Ze(r1+r2)},
/// c = (1/(2 pi)^3)(4 pi / q^2)(Ze^3 / pi).
double source_term(const TemkinPoetProblem &p, double r1, double r2);

/// I_n = int psi_n r e^{-Ze r} dr and J_n = int psi_n r e^{-Ze r} j0(q r) dr.
void source_moments(const TemkinPoetProblem &p, std::vector<double> &I_n, std::vector<double> &J_n,
                    int n_nodes = 80);

/// R_{m1 m2} (index m1 N + m2) from the separable form of the source.
Eigen::VectorXcd rhs_vector(const TemkinPoetProblem &p);

/// R_{m1 m2} by the 2-D rule, multiplied by e^{-iW} when a phase field is given.
Eigen::VectorXcd rhs_vector_2d(const TemkinPoetProblem &p, const Quadrature2D &quad,
                               const PhaseField *phase = nullptr);

/// V_{m1 m2; n1 n2} = int int psi psi (1/r>) psi psi.
Eigen::MatrixXd v_matrix(const TemkinPoetProblem &p, const Quadrature2D &quad);

/// U_{m1 m2; n1 n2} = int int psi_m1 psi_m2 U psi_n1 psi_n2 with
/// U = 1/r> + (W1^2 + W2^2)/2 - (i/2)(W11 + W22) - i (W1 d/dr1 + W2 d/dr2).
Eigen::MatrixXcd u_matrix(const TemkinPoetProblem &p, const Quadrature2D &quad, const PhaseField &phase);

struct DrivenSolution
{
  Eigen::MatrixXcd coefficients;  ///< C(n1, n2)
  bool modified = false;
  double residual = 0.0;          ///< max |(I + L) C - R|
  double rcond = 0.0;             ///< reciprocal condition estimate of I + L
};

/// Solves (I - M G) C = R with the tensor truncated to the problem size.
DrivenSolution solve_linear(const Eigen::MatrixXcd &M, const CqsTensor &tensor, const Eigen::VectorXcd &R,
                            bool modified);

DrivenSolution solve_plain(const TemkinPoetProblem &p, const CqsTensor &tensor, const DrivenOptions &opt = {});
DrivenSolution solve_modified(const TemkinPoetProblem &p, const CqsTensor &tensor, const PhaseField &phase,
                              const DrivenOptions &opt = {});

/// sum C_{n1 n2} S_{n1}(p1) S_{n2}(p2) at p1 = cos(alpha) sqrt(2E), p2 = sin(alpha) sqrt(2E).
cplx amplitude_sum(const DrivenSolution &sol, const TemkinPoetProblem &p, double alpha);

/// 2 (2E)^{3/4} / (E sin 2alpha) sqrt(2/pi) |sum C S S|. Same prefactor for the
/// modified solution; the extra phase of its asymptotic form has unit modulus.
double magnitude_A(const DrivenSolution &sol, const TemkinPoetProblem &p, double alpha);
double magnitude_A_modified(const DrivenSolution &sol, const TemkinPoetProblem &p, double alpha);

/// rho^{5/2} times the large-rho form of the solution at the point, including the
/// Coulomb log phases and, for a modified solution, the interelectronic phase.
cplx asymptotic_solution(const DrivenSolution &sol, const TemkinPoetProblem &p, const HypersphericalPoint &pt);

/// chi(r1, r2) rho^{1/2} 2 / sin(2 alpha) with chi = sum C Q (times e^{iW} when modified);
/// Q holds the basis functions Q_{n1 n2} at the point (N x N).
cplx solution_scaled(const DrivenSolution &sol, const Eigen::MatrixXcd &Q, const HypersphericalPoint &pt,
                     const PhaseField &phase);

/// U Q / Q for the CQS functions Q_{n1 n2}, n1, n2 < count. Derivatives of Q come
/// from a fourth-order central stencil with step h applied to contour evaluations.
Eigen::MatrixXcd effective_potential(const LaguerreBasisSpec &spec, int count, const HypersphericalPoint &pt,
                                     const std::vector<ContourNode> &nodes, const PhaseField &phase,
                                     double h = 0.05, const QsIntegralOptions &opt = {});

/// (ln(2 sqrt(2E) rho) / (sqrt(2E) rho))^2.
double effective_potential_asymptote(double E, double rho);

}  // namespace cqs
