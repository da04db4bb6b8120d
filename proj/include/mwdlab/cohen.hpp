#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mwdlab/blockmat.hpp"
#include "mwdlab/engine.hpp"
#include "mwdlab/report.hpp"

namespace mwdlab {

enum class KernelKind { Chirp, Delta, Singular };

/// Cohen kernel theta_M. Only the Chirp kind has pointwise values.
struct CohenKernel {
  SquareMatrix m;
  KernelKind kind;
  SquareMatrix m_inv;       ///< Chirp only
  double inv_abs_det = 0.0; ///< Chirp only
};

CohenKernel theta(const SquareMatrix& m);
/// |det M|^{-1} e^{2 pi i x.M^{-1}w}; SingularKernel for Delta and Singular.
cplx eval_theta(const CohenKernel& k, std::span<const double> x, std::span<const double> w);
cplx eval_theta(const CohenKernel& k, double x, double w);

/// Theta_M(xi, eta) = e^{-2 pi i xi.M eta}
cplx theta_hat(const SquareMatrix& m, std::span<const double> xi, std::span<const double> eta);
/// chi_M(xi, eta) = e^{2 pi i eta.M xi}
cplx chi(const SquareMatrix& m, std::span<const double> xi, std::span<const double> eta);

struct GaussianClosedForm {
  SquareMatrix m;
  double lambda;
  SquareMatrix s;
  SquareMatrix s_inv;
  double prefactor;  ///< (2 lambda)^{d/2} det(S)^{-1/2}
};

GaussianClosedForm gaussian_closed_form(const SquareMatrix& m, double lambda);
/// B_{A_M} phi_lambda(x, w) for phi_lambda(t) = e^{-pi t^2 / lambda}.
cplx gaussian_oracle(const GaussianClosedForm& g, std::span<const double> x,
                     std::span<const double> w);
cplx gaussian_oracle(const SquareMatrix& m, double lambda, std::span<const double> x,
                     std::span<const double> w);
/// Same value through the quadratic form e^{-pi z.Sigma z}, with R^{-1}
/// obtained by inverting I + 4 M M^T directly.
cplx gaussian_oracle_sigma(const SquareMatrix& m, double lambda, std::span<const double> x,
                           std::span<const double> w);
PhaseSpaceField gaussian_oracle_field(const SquareMatrix& m, double lambda,
                                      const PhaseSpaceGrid& grid);

/// sup |F_sigma B_{A_M}(f, g) - chi_M Amb(f, g)| on the dual lattice of grid.
CheckReport verify_characterization(const SquareMatrix& m, const Signal& f, const Signal& g,
                                    const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                    double tolerance = 1e-6);

/// Maps a field of B_{A_{M1}}(f, g) to B_{A_{M2}}(f, g) through the Fourier
/// multiplier Theta_{M2 - M1}.
PhaseSpaceField multiplier_relate(const SquareMatrix& m1, const SquareMatrix& m2,
                                  const PhaseSpaceField& field1);
/// Spectrum-level form of the same map.
PhaseSpaceField multiplier_spectrum(const SquareMatrix& m1, const SquareMatrix& m2,
                                    const PhaseSpaceField& spectrum1);

/// Conditions (i)-(v) on Theta_M at the given (x, w) points; (iv) pairs
/// consecutive points and (v) uses the supplied dilation.
std::vector<CheckReport> check_theta_conditions(
    const SquareMatrix& m, const std::vector<std::pair<std::vector<double>, std::vector<double>>>& points,
    double lambda = 3.0, double tolerance = 1e-12);

}  // namespace mwdlab
