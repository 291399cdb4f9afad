#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cqs/types.hpp"

namespace cqs
{

struct LaguerreBasisSpec
{
  double b = 1.6875;
  int l = 0;
  int N = 1;

  /// Throws ConfigError unless b > 0, l >= 0, N >= 1.
  void validate() const;
};

struct Kinematics
{
  cplx k;
  cplx omega;   ///< (b + ik) / (b - ik)
  cplx sin_xi;  ///< 2bk / (b^2 + k^2)
  cplx beta;    ///< -Z / k
  double Z = 2.0;
};

/// Throws DomainError at k = 0 and k = +-ib.
Kinematics kinematics(const LaguerreBasisSpec &spec, cplx k, double Z = 2.0);

/// psi_n^l(r) = [(n+1)_{2l+1}]^{-1/2} (2br)^{l+1} e^{-br} L_n^{2l+1}(2br).
double laguerre_basis_eval(const LaguerreBasisSpec &spec, int n, double r);

/// d psi_n^l / dr.
double laguerre_basis_deriv(const LaguerreBasisSpec &spec, int n, double r);

/// psi_0..psi_{count-1} at r (and optionally their derivatives) in one recurrence pass.
void laguerre_basis_all(const LaguerreBasisSpec &spec, int count, double r, double *values,
                        double *derivs = nullptr);

/// S_{nl}(k) and C^{(+)}_{nl}(k) exactly as printed, including |Gamma(l+1+i beta)|
/// (which is not analytic in k off the real axis).
cplx s_coefficient(const LaguerreBasisSpec &spec, int n, const Kinematics &kin);
cplx c_plus_coefficient(const LaguerreBasisSpec &spec, int n, const Kinematics &kin);

/// The factor g = e^{-pi beta/2} omega^{-i beta} |Gamma(l+1+i beta)| carried by S.
/// C^{(+)} carries 1/g, so the Green's matrix only sees the reduced coefficients
/// s~ = S/g and c~ = C g, both analytic in k (principal log of omega).
cplx s_gauge(const LaguerreBasisSpec &spec, const Kinematics &kin);

struct JMatrixCoefficients
{
  std::vector<cplx> s;  ///< s~_n
  std::vector<cplx> c;  ///< c~_n
};

/// Reduced coefficients for n = 0..count-1.
JMatrixCoefficients jmatrix_coefficients(const LaguerreBasisSpec &spec, const Kinematics &kin,
                                         int count);

using GreenMatrix1p = Eigen::MatrixXcd;

/// G_{mn} = -(2/k) S_{n<} C^{(+)}_{n>}, rows x spec.N (rows defaults to spec.N).
GreenMatrix1p green_matrix_1p(const LaguerreBasisSpec &spec, const Kinematics &kin,
                              int rows = -1);

/// Tridiagonal matrix elements  int psi_m (E - h^l) psi_n dr  with E = k^2/2 (no 1/r weight),
/// closed form. The Green's matrix is its inverse in the sense T G = I.
Eigen::MatrixXcd hamiltonian_tridiagonal(const LaguerreBasisSpec &spec, cplx energy, int rows,
                                         int cols, double Z = 2.0);

}  // namespace cqs
