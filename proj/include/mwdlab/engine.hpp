#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mwdlab/blockmat.hpp"
#include "mwdlab/signals.hpp"

namespace mwdlab {

inline constexpr std::size_t kDefaultGridCap = std::size_t{1} << 22;

/// Rectangular (x, w) lattice: d x-axes followed by d w-axes.
struct PhaseSpaceGrid {
  std::vector<Grid1D> x_axes;
  std::vector<Grid1D> w_axes;

  PhaseSpaceGrid() = default;
  PhaseSpaceGrid(std::vector<Grid1D> x, std::vector<Grid1D> w);
  /// Same x-axis and w-axis in every dimension.
  static PhaseSpaceGrid uniform(std::size_t d, const Grid1D& x, const Grid1D& w);

  std::size_t dim() const noexcept { return x_axes.size(); }
  std::size_t x_count() const noexcept;
  std::size_t w_count() const noexcept;
  std::size_t size() const noexcept { return x_count() * w_count(); }
  /// All 2d axes, x first.
  std::vector<Grid1D> axes() const;

  void x_point(std::size_t ix, std::span<double> out) const;
  void w_point(std::size_t iw, std::span<double> out) const;

  /// Throws GridTooLarge above the cap.
  void check_size(std::size_t cap = kDefaultGridCap) const;

  friend bool operator==(const PhaseSpaceGrid&, const PhaseSpaceGrid&) = default;
};

/// Samples of a phase-space function; values[ix * w_count + iw].
struct PhaseSpaceField {
  PhaseSpaceGrid grid;
  std::vector<cplx> values;

  PhaseSpaceField() = default;
  explicit PhaseSpaceField(PhaseSpaceGrid g);

  cplx& at(std::size_t ix, std::size_t iw) { return values[ix * grid.w_count() + iw]; }
  cplx at(std::size_t ix, std::size_t iw) const { return values[ix * grid.w_count() + iw]; }
  double max_abs() const noexcept;
};

double max_abs_diff(const PhaseSpaceField& a, const PhaseSpaceField& b);

/// Direct midpoint quadrature of B_A(f, g) on the grid.
PhaseSpaceField mwd(const BlockMatrix& a, const Signal& f, const Signal& g,
                    const PhaseSpaceGrid& grid, const QuadratureConfig& q);

/// One x row of the direct path, over the product of the w-axes.
std::vector<cplx> mwd_row(const BlockMatrix& a, const Signal& f, const Signal& g,
                          std::span<const double> x, std::span<const Grid1D> w_axes,
                          const QuadratureConfig& q);
/// B_A(f, g)(x, w) at a single point.
cplx mwd_point(const BlockMatrix& a, const Signal& f, const Signal& g, std::span<const double> x,
               std::span<const double> w, const QuadratureConfig& q);

/// y-sampling used by the FFT path for one dimension. The nodes are the
/// midpoints of `count` cells covering [-half_width, half_width], and the
/// w-axis step equals `stride` DFT bins.
struct FftAxisPlan {
  std::size_t count;
  double half_width;
  double step;
  std::size_t stride;
};

struct FftPlan {
  std::vector<FftAxisPlan> axes;
  std::size_t total() const noexcept;
};

/// Chooses a y-sampling compatible with the w-axes, widening the window when
/// the w-step does not divide the DFT lattice of [-R, R].
FftPlan plan_fft(std::span<const Grid1D> w_axes, const QuadratureConfig& q);
/// w-axis with step 1/(2R) centered on zero: the DFT lattice of the default window.
Grid1D canonical_w_axis(const QuadratureConfig& q, std::size_t count);

/// Partial-DFT evaluation of B_A(f, g); agrees with mwd to quadrature accuracy.
PhaseSpaceField mwd_fft(const BlockMatrix& a, const Signal& f, const Signal& g,
                        const PhaseSpaceGrid& grid, const QuadratureConfig& q);

enum class Distribution { Wigner, Tau, Rihaczek, ConjRihaczek, Stft, Ambiguity };

BlockMatrix distribution_matrix(Distribution kind, std::size_t d, double tau = 0.5);
PhaseSpaceField specialize(Distribution kind, const Signal& f, const Signal& g,
                           const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                           double tau = 0.5);

/// Trapezoid integral over all w for each x; entries follow the x multi-index.
std::vector<cplx> marginal_time(const PhaseSpaceField& field, double tail_tol = 1e-8);
/// Trapezoid integral over all x for each w.
std::vector<cplx> marginal_freq(const PhaseSpaceField& field, double tail_tol = 1e-8);
/// Trapezoid integral over the whole grid.
cplx total_mass(const PhaseSpaceField& field);

/// Fourier transform in all 2d variables. Output axes are the dual lattices
/// (j - floor(N/2)) / (N step), with (xi, eta) stored as (x, w).
PhaseSpaceField field_fourier(const PhaseSpaceField& field);
/// Exact inverse of field_fourier back onto `original` (which must be the
/// grid whose dual lattice `spectrum` lives on).
PhaseSpaceField field_inverse_fourier(const PhaseSpaceField& spectrum,
                                      const PhaseSpaceGrid& original);
/// F_sigma F(x, w) = F F(w, -x).
PhaseSpaceField field_symplectic_fourier(const PhaseSpaceField& field);
/// Dual lattice of an axis under field_fourier.
Grid1D dual_axis(const Grid1D& axis);

/// Grid inner product sum a conj(b) times the cell volume.
cplx field_inner(const PhaseSpaceField& a, const PhaseSpaceField& b);
/// (sum |v|^p cell)^{1/p}
double field_lp_norm(const PhaseSpaceField& field, double p);

}  // namespace mwdlab
