#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqs/contour.hpp"
#include "cqs/jmatrix.hpp"
#include "cqs/qs1p.hpp"

namespace cqs
{

/// Laguerre representation of the two-particle outgoing Green's operator,
/// entries(m1 * rows + m2, n1 * N + n2) = G_{m1 m2, n1 n2}(E). Both channels share N.
struct CqsTensor
{
  double E = 0.0;
  LaguerreBasisSpec spec1;
  LaguerreBasisSpec spec2;
  int rows = 0;         ///< range of the outgoing indices m1, m2 (normally N)
  std::string contour;  ///< ContourSpec::canonical() of the contour used
  Eigen::MatrixXcd entries;

  int size() const { return spec1.N; }
  cplx operator()(int m1, int m2, int n1, int n2) const
  {
    return entries(m1 * rows + m2, n1 * spec1.N + n2);
  }
};

/// Sum over contour nodes of weight * G^{l1}_{m1 n1}(k1) G^{l2}_{m2 n2}(k2). Nodes are
/// split across worker threads and the partial sums reduced in a fixed order, so
/// the result does not depend on the thread count. `rows` > N builds the
/// outgoing index range 0..rows-1 (rectangular rows^2 x N^2 tensor), which the
/// defining-identity check needs.
CqsTensor build_tensor(double E, const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2,
                       const ContourSpec &contour, int rows = -1, int threads = 0);

struct HypersphericalPoint
{
  double r1;
  double r2;

  static HypersphericalPoint from_polar(double rho, double alpha);
  double rho() const;
  double alpha() const;
  double p1(double E) const;
  double p2(double E) const;
};

/// Stationary point of the convolution phase along the ray at hyperangle alpha.
double stationary_point(double alpha, double E);

/// sum_{m1, m2 < M} psi_m1(r1) psi_m2(r2) G_{m1 m2, n1 n2}.
cplx cqs_eval_expansion(const CqsTensor &tensor, int n1, int n2, const HypersphericalPoint &pt, int M);

/// (1/2 pi i) int Q_{n1}(k1, r1) Q_{n2}(k2, r2) dE along a C2 contour, one-particle
/// functions from the integral representation. C1 is rejected: its lower half
/// lies on the unphysical sheet where Q grows exponentially with r.
cplx cqs_eval_contour(const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2, int n1, int n2,
                      const HypersphericalPoint &pt, const ContourSpec &contour,
                      const QsIntegralOptions &opt = {});

/// All Q_{n1 n2} for n1, n2 < count at once (count x count, row n1).
Eigen::MatrixXcd cqs_eval_contour_all(const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2,
                                      int count, const HypersphericalPoint &pt,
                                      const std::vector<ContourNode> &nodes,
                                      const QsIntegralOptions &opt = {});

/// B_n^l(k) = [(n+1)_{2l+1}]^{1/2} (-w)^n 2F1(-n, l+1+i beta; 2l+2; 1 - w^{-2}).
cplx b_normalizer(const LaguerreBasisSpec &spec, int n, const Kinematics &kin);

/// Large-rho stationary-phase form of Q_{n1 n2} (real momenta p1, p2 on the ray).
cplx cqs_asymptotic(const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2, int n1, int n2,
                    const HypersphericalPoint &pt, double E);

/// 64-bit FNV-1a over the tensor-relevant parameters.
std::uint64_t tensor_fingerprint(double E, const LaguerreBasisSpec &spec1,
                                 const LaguerreBasisSpec &spec2, const std::string &contour);

/// Tensor disk cache. File layout: a text header of `key = value` lines closed by a
/// line `payload`, then rows*cols pairs (re, im) of little-endian IEEE-754 doubles in
/// row-major order.
void save_tensor(const CqsTensor &tensor, const std::string &path);
CqsTensor load_tensor(const std::string &path);
std::string tensor_cache_name(const CqsTensor &tensor);
std::string tensor_cache_name(double E, const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2,
                              const std::string &contour);

/// Loads `dir/<cache name>` when present and matching, otherwise builds and stores it.
CqsTensor cached_tensor(const std::string &dir, double E, const LaguerreBasisSpec &spec1,
                        const LaguerreBasisSpec &spec2, const ContourSpec &contour);

}  // namespace cqs
