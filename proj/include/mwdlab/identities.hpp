#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mwdlab/blockmat.hpp"
#include "mwdlab/engine.hpp"
#include "mwdlab/report.hpp"

namespace mwdlab {

/// <B_A(f1,g1), B_A(f2,g2)> against |det A|^{-1} <f1,f2> conj<g1,g2>. The
/// error is relative to the Cauchy-Schwarz bound of the right side.
CheckReport check_moyal(const BlockMatrix& a, const Signal& f1, const Signal& g1,
                        const Signal& f2, const Signal& g2, const PhaseSpaceGrid& grid,
                        const QuadratureConfig& q, double tolerance = 1e-6);

/// Time-frequency shifts applied to f (a, alpha) and g (b, beta).
struct Shift {
  std::vector<double> a, b, alpha, beta;
};

enum class CovarianceMode {
  General,      ///< phase and shift from (r, s) = A^{-1}(a, b), (rho, sigma) = A^T(alpha, -beta)
  Translation,  ///< plain T_{(a, alpha)}, valid for Cohen-type A with a = b, alpha = beta
};

struct CovarianceParams {
  std::vector<double> r, s, rho, sigma;
};
CovarianceParams covariance_params(const BlockMatrix& a, const Shift& shift);
/// (r, s) = A I_2 (a, beta), (rho, sigma) = I_2 A^# (alpha, b)
CovarianceParams inverse_covariance_params(const BlockMatrix& a, const Shift& shift);

CheckReport check_covariance(const BlockMatrix& a, const Signal& f, const Signal& g,
                             const Shift& shift, const PhaseSpaceGrid& grid,
                             const QuadratureConfig& q,
                             CovarianceMode mode = CovarianceMode::General,
                             double tolerance = 1e-6);
/// Inverse covariance form on the field, then the forward form applied to the
/// shifted signals; both the parameters and the fields must come back.
CheckReport check_covariance_roundtrip(const BlockMatrix& a, const Signal& f, const Signal& g,
                                       const Shift& shift, const PhaseSpaceGrid& grid,
                                       const QuadratureConfig& q, double tolerance = 1e-6);

/// (z, zeta) in R^{4d} split into d-blocks.
struct StpPoint {
  std::vector<double> z1, z2, zeta1, zeta2;
};

struct StpArguments {
  std::vector<double> a, alpha, b, beta;
};
/// (a, b) = A I_2 (z1, zeta2), (alpha, beta) = I_2 A^# (zeta1, z2)
StpArguments stp_arguments(const BlockMatrix& a, const StpPoint& p);
/// d = 1 Cohen form: (a, alpha) = z + P_M J zeta, (b, beta) = z + (I + P_M) J zeta.
StpArguments stp_arguments_cohen(double m, const StpPoint& p);

/// Short-time Fourier transform of B_A(f, g) with window B_A(phi, psi) at
/// each point, by quadrature over the grid, against the product of two STFTs.
CheckReport check_stp(const BlockMatrix& a, const Signal& f, const Signal& g, const Signal& phi,
                      const Signal& psi, const std::vector<StpPoint>& points,
                      const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                      double tolerance = 1e-5);

/// Values of B_A f along one x row, over the product of the given w-axes.
using RowProvider = std::function<std::vector<cplx>(std::span<const double> x,
                                                    std::span<const Grid1D> w_axes)>;
RowProvider row_provider(const BlockMatrix& a, const Signal& f, const QuadratureConfig& q);

/// f(x) from B_A f by integrating over w in [-R, R]^d (trapezoid,
/// `samples` nodes per axis) and dividing by conj f(0).
std::vector<cplx> pointwise_invert(const BlockMatrix& a, const RowProvider& provider, cplx f0,
                                   const std::vector<std::vector<double>>& xs,
                                   const QuadratureConfig& q, std::size_t samples = 1025);

/// B*_{A,g} H sampled on `out`, with the y integral taken as a trapezoid sum
/// over `y`. d = 1.
Signal adjoint_apply(const BlockMatrix& a, const Signal& g, const PhaseSpaceField& h,
                     const Grid1D& out, const Grid1D& y);
/// f against |det A| / conj<g, gamma> B*_{A,gamma} B_{A,g} f on `out`.
CheckReport adjoint_reconstruct(const BlockMatrix& a, const Signal& g, const Signal& gamma,
                                const Signal& f, const PhaseSpaceGrid& grid,
                                const QuadratureConfig& q, const Grid1D& out, const Grid1D& y,
                                double tolerance = 1e-3);

/// |det A12|^{-1} e^{2 pi i A12^# w . A11 x} V_{g~} f(c, d)
cplx right_regular_stft_form(const BlockMatrix& a, const Signal& f, const Signal& g,
                             std::span<const double> x, std::span<const double> w,
                             const QuadratureConfig& q);

/// a x + b y = c
struct Line {
  double a, b, c;
};

/// Interference geometry of the two-tone toy model in the (x, y) plane of the
/// integrand y -> f(x + (m + 1/2) y) conj f(x + (m - 1/2) y).
struct DiamondGeometry {
  double m;
  double x1, h1, x2, h2;
  std::array<double, 2> v1, v2;
  std::array<Line, 8> lines;  ///< x + (m + 1/2) y = c then x + (m - 1/2) y = c
};

/// Intervals are [lo, hi]; requires h2 >= h1 > 0 and x1 + h1 < x2.
DiamondGeometry diamond(double m, std::pair<double, double> i1, std::pair<double, double> i2);

struct DiamondCorners {
  std::array<double, 2> v1, v2;
  double cell;
};
/// Corners read off the thresholded support of the integrand on a square grid:
/// the x-centroid of the lowest (v1) and highest (v2) occupied rows.
DiamondCorners computed_corners(const DiamondGeometry& geom, const Signal& f, double cell = 0.05,
                                double threshold = 0.5);
/// Two-tone signal e^{2 pi i w1 t} 1_{I1} + e^{2 pi i w2 t} 1_{I2}.
Signal two_tone(std::pair<double, double> i1, double w1, std::pair<double, double> i2, double w2);

struct SupportReport {
  std::optional<Box> x_projection_hull;
  Box hull_of_supp_f;
  bool weak_time_holds = false;
  double outside_ratio = 0.0;  ///< max |B| outside supp f over max |B|
};

/// Thresholded support of |B_{A_M} f| projected onto x, against the convex
/// hull of supp f inflated by one grid cell.
SupportReport support_report(const SquareMatrix& m, const Signal& f, const PhaseSpaceGrid& grid,
                             const QuadratureConfig& q, double threshold = 1e-3);
/// Frequency-side weak support: the time report for -M^T on the spectrum of f.
SupportReport support_report_frequency(const SquareMatrix& m, const Signal& f,
                                       const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                       double threshold = 1e-3);

/// Reflection, conjugation, convolution, product and scaling identities for
/// B_{A_M}. `lambda` is the dilation used for scaling.
std::vector<CheckReport> check_symmetry_scaling_convolution(const SquareMatrix& m,
                                                            const Signal& f, const Signal& g,
                                                            const PhaseSpaceGrid& grid,
                                                            const QuadratureConfig& q,
                                                            double lambda = 2.0);

/// Gram matrix of {B_A(e_m, e_n)} under the grid inner product against the
/// identity scaled by |det A|^{-1}.
CheckReport check_orthonormal_basis(const BlockMatrix& a, const std::vector<Signal>& basis,
                                    const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                    double tolerance = 1e-4);

/// L1 distance of each marginal from its closed form; time first.
std::vector<CheckReport> check_marginals(const BlockMatrix& a, const Signal& f,
                                         const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                         double tolerance = 1e-4);

double lq_bound(const BlockMatrix& a, double p, double q_exp, double f_norm_p,
                double g_norm_pprime);
/// Bound in terms of M alone; equal to lq_bound on A_M.
double lq_bound_cohen(const SquareMatrix& m, double p, double q_exp, double f_norm_p,
                      double g_norm_pprime);
/// max(0, ||B_A(f,g)||_q / bound - 1) against `slack`.
CheckReport check_lq_bound(const BlockMatrix& a, const Signal& f, const Signal& g, double p,
                           double q_exp, const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                           double slack = 0.01);

/// B_A(g, f) against conj B_C(f, g), C = flip A I_2.
CheckReport check_interchange(const BlockMatrix& a, const Signal& f, const Signal& g,
                              const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                              double tolerance = 1e-8);
/// B_A(f^, g^)(x, w) against |det A|^{-1} B_{I_2 A^# flip}(f, g)(-w, x).
CheckReport check_fundamental_like(const BlockMatrix& a, const Signal& f, const Signal& g,
                                   const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                   double tolerance = 1e-6);
/// Fourier transform of the B_A field against B_{AJ}(f, g)(eta, xi).
CheckReport check_fourier_of_field(const BlockMatrix& a, const Signal& f, const Signal& g,
                                   const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                   double tolerance = 1e-6);

/// Same axis negated: points -x in increasing order.
Grid1D negated_axis(const Grid1D& axis);

}  // namespace mwdlab
