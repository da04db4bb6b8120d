#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "mwdlab/blockmat.hpp"

namespace mwdlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Upper bound on signal dimension; evaluation uses stack buffers of this size.
inline constexpr std::size_t kMaxDim = 8;

/// Uniform axis with inclusive start and exclusive stop.
class Grid1D {
 public:
  Grid1D() = default;
  Grid1D(double start, double stop, std::size_t count);
  static Grid1D from_step(double start, double step, std::size_t count);

  double start() const noexcept { return start_; }
  double stop() const noexcept { return stop_; }
  std::size_t count() const noexcept { return count_; }
  double step() const noexcept { return (stop_ - start_) / static_cast<double>(count_); }
  double point(std::size_t k) const noexcept { return start_ + static_cast<double>(k) * step(); }
  /// Largest |point|.
  double max_abs() const noexcept;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double start_ = 0.0;
  double stop_ = 1.0;
  std::size_t count_ = 2;
};

struct QuadratureConfig {
  double radius = 8.0;
  /// Midpoint nodes per dimension; 0 selects 4096 for d = 1 and 256 otherwise.
  std::size_t samples_per_dim = 0;
  double tail_tol = 1e-10;
  /// Downgrades TailTooFat from an error to a no-op.
  bool allow_truncation = false;

  std::size_t samples_for(std::size_t d) const noexcept {
    if (samples_per_dim != 0) return samples_per_dim;
    return d == 1 ? 4096 : 256;
  }
  double step_for(std::size_t d) const noexcept {
    return 2.0 * radius / static_cast<double>(samples_for(d));
  }
  /// k-th midpoint node of [-R, R].
  double node(std::size_t d, std::size_t k) const noexcept {
    return -radius + (static_cast<double>(k) + 0.5) * step_for(d);
  }
};

enum class SignalKind {
  Gaussian,
  Hermite,
  WindowedTone,
  ToneSpectrum,
  TFShift,
  Dilate,
  Conjugate,
  Reflect,
  Sum,
  Sampled,
  LinearMap,
  Tensor,
};

/// Axis-aligned box [lo, hi] in R^d.
struct Box {
  std::vector<double> lo, hi;
};

struct SignalNode;

/// Immutable signal on R^d. Copies share the underlying tree.
class Signal {
 public:
  static Signal gaussian(std::size_t d, double lambda);
  /// L2-normalized Hermite function h_n, d = 1.
  static Signal hermite(unsigned n);
  /// e^{2 pi i w.t} on the box, zero outside.
  static Signal tone(Box box, std::vector<double> freq);
  static Signal tone(double a, double b, double freq);
  static Signal sum(std::vector<std::pair<cplx, Signal>> terms);
  /// Samples on a d = 1 grid, evaluated by periodic band-limited interpolation.
  static Signal sampled(Grid1D grid, std::vector<cplx> values, bool zero_outside = false);
  /// f(t) = prod_k f_k(t_k) for 1-d factors.
  static Signal tensor(std::vector<Signal> factors);

  /// M_w T_x f
  Signal tf_shift(std::vector<double> x, std::vector<double> w) const;
  /// |lambda|^{d/2} f(lambda t)
  Signal dilate(double lambda) const;
  Signal conjugate() const;
  /// f(-t)
  Signal reflect() const;
  /// conj f(-t)
  Signal involution() const { return reflect().conjugate(); }
  /// f(B t)
  Signal linear_map(const SquareMatrix& b) const;
  Signal scaled(cplx c) const { return sum({{c, *this}}); }

  std::size_t dim() const noexcept;
  SignalKind kind() const noexcept;
  const SignalNode& node() const noexcept { return *node_; }

  cplx evaluate(std::span<const double> t) const;
  cplx evaluate(double t) const { return evaluate(std::span<const double>(&t, 1)); }

  /// Exact transform for analytic bodies, scaled DFT for sampled ones.
  Signal fourier() const;

  /// Bounding box of the support when it is compact.
  std::optional<Box> support_hull() const;

 private:
  explicit Signal(std::shared_ptr<const SignalNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const SignalNode> node_;

  friend struct SignalNode;
  friend Signal make_signal(SignalNode node);
};

/// Read-only view of a signal's body, used by serializers.
struct SignalNode {
  struct Gaussian { double lambda; };
  struct Hermite { unsigned n; };
  struct WindowedTone { Box box; std::vector<double> freq; };
  struct ToneSpectrum { Box box; std::vector<double> freq; };
  struct TFShift { Signal inner; std::vector<double> x, w; };
  struct Dilate { Signal inner; double lambda; };
  struct Conjugate { Signal inner; };
  struct Reflect { Signal inner; };
  struct Sum { std::vector<std::pair<cplx, Signal>> terms; };
  struct Sampled {
    Grid1D grid;
    std::vector<cplx> values;
    bool zero_outside;
    std::vector<cplx> coeffs;  ///< DFT / N, symmetric order -K..K
    bool split_nyquist;
  };
  struct LinearMap { Signal inner; SquareMatrix b; };
  struct Tensor { std::vector<Signal> factors; };

  std::size_t dim;
  std::variant<Gaussian, Hermite, WindowedTone, ToneSpectrum, TFShift, Dilate, Conjugate, Reflect,
               Sum, Sampled, LinearMap, Tensor>
      body;
};

/// Midpoint approximation of int f conj(g) over [-R, R]^d.
cplx inner_product(const Signal& f, const Signal& g, const QuadratureConfig& q);
double norm_sq(const Signal& f, const QuadratureConfig& q);
/// (int |f|^p)^{1/p} by midpoint quadrature.
double lp_norm(const Signal& f, double p, const QuadratureConfig& q);
/// V_g f(x, w) = <f, M_w T_x g>
cplx stft(const Signal& f, const Signal& g, std::span<const double> x, std::span<const double> w,
          const QuadratureConfig& q);
cplx stft(const Signal& f, const Signal& g, double x, double w, const QuadratureConfig& q);

/// Sampled d = 1 signal holding f on the grid.
Signal sample(const Signal& f, const Grid1D& grid, bool zero_outside = true);

}  // namespace mwdlab
