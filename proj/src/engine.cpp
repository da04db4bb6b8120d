#include "mwdlab/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "mwdlab/error.hpp"
#include "mwdlab/fft.hpp"
#include "mwdlab/parallel.hpp"

namespace mwdlab {

namespace {

using Buf = std::array<double, kMaxDim>;

cplx cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

std::size_t product_count(const std::vector<Grid1D>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count();
  return n;
}

// Row-major multi-index decomposition.
void unflatten(std::size_t flat, std::span<const std::size_t> extents, std::span<std::size_t> idx) {
  for (std::size_t k = extents.size(); k-- > 0;) {
    idx[k] = flat % extents[k];
    flat /= extents[k];
  }
}

std::vector<std::size_t> extents_of(const std::vector<Grid1D>& axes) {
  std::vector<std::size_t> e;
  for (const auto& a : axes) e.push_back(a.count());
  return e;
}

void validate(const BlockMatrix& a, const Signal& f, const Signal& g, const PhaseSpaceGrid& grid) {
  const std::size_t d = a.dim();
  if (f.dim() != d || g.dim() != d || grid.dim() != d)
    fail(ErrorKind::InvalidArgument, "matrix, signals and grid differ in dimension");
  if (d > kMaxDim) fail(ErrorKind::InvalidArgument, "dimension too large");
  if (!a.full().is_invertible()) fail(ErrorKind::SingularMatrix, "transform matrix is not invertible");
  grid.check_size();
}

void oscillation_guard(double h, double w_max) {
  if (h * w_max > 0.25)
    fail(ErrorKind::OscillationGuard,
         "quadrature step " + std::to_string(h) + " under-resolves frequency " +
             std::to_string(w_max) + "; raise samples or shrink the frequency range");
}

void tail_guard(double boundary, const QuadratureConfig& q) {
  if (boundary > q.tail_tol && !q.allow_truncation)
    fail(ErrorKind::TailTooFat, "integrand magnitude " + std::to_string(boundary) +
                                    " at the truncation radius exceeds tail_tol");
}

// Samples y -> f(A11 x + A12 y) conj g(A21 x + A22 y) on the tensor grid of
// midpoint nodes with the given count and half-width per dimension. Nodes with
// |y_k| beyond `radius` are zero. Returns the largest magnitude over the
// outermost layer of nonzero nodes.
double sample_integrand(const BlockMatrix& a, const Signal& f, const Signal& g,
                        std::span<const double> x, std::span<const std::size_t> counts,
                        std::span<const double> half_widths, std::span<cplx> out,
                        double radius = std::numeric_limits<double>::infinity()) {
  const std::size_t d = a.dim();
  Buf a11x, a21x, y, u, v;
  a.a11.apply(x, std::span<double>(a11x.data(), d));
  a.a21.apply(x, std::span<double>(a21x.data(), d));
  std::array<std::size_t, kMaxDim> idx{};
  double edge = 0.0;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    unflatten(flat, counts, std::span<std::size_t>(idx.data(), d));
    bool on_edge = false, outside = false;
    for (std::size_t k = 0; k < d; ++k) {
      const double h = 2.0 * half_widths[k] / static_cast<double>(counts[k]);
      y[k] = -half_widths[k] + (static_cast<double>(idx[k]) + 0.5) * h;
      const double lim = std::min(radius, half_widths[k]);
      outside = outside || std::abs(y[k]) > lim;
      on_edge = on_edge || std::abs(y[k]) > lim - h;
    }
    if (outside) {
      out[flat] = cplx{0.0, 0.0};
      continue;
    }
    for (std::size_t i = 0; i < d; ++i) {
      double su = a11x[i], sv = a21x[i];
      for (std::size_t j = 0; j < d; ++j) {
        su += a.a12(i, j) * y[j];
        sv += a.a22(i, j) * y[j];
      }
      u[i] = su;
      v[i] = sv;
    }
    const cplx fu = f.evaluate(std::span<const double>(u.data(), d));
    const cplx value = fu == cplx{0.0, 0.0}
                           ? fu
                           : fu * std::conj(g.evaluate(std::span<const double>(v.data(), d)));
    out[flat] = value;
    if (on_edge) edge = std::max(edge, std::abs(value));
  }
  return edge;
}

// sum_n e^{-2 pi i w y_n} F_n h for y_n = y0 + n h, all w on the axis.
// Phases advance by a rotation recurrence re-anchored every 64 nodes.
void direct_1d(std::span<const cplx> values, double y0, double h, const Grid1D& w_axis,
               std::span<cplx> out) {
  constexpr std::size_t kBlock = 64;
  const std::size_t n = values.size();
  for (std::size_t m = 0; m < w_axis.count(); ++m) {
    const double w = w_axis.point(m);
    const cplx rot = cis(-kTwoPi * w * h);
    cplx acc{0.0, 0.0};
    for (std::size_t start = 0; start < n; start += kBlock) {
      cplx z = cis(-kTwoPi * w * (y0 + static_cast<double>(start) * h));
      const std::size_t end = std::min(n, start + kBlock);
      cplx block{0.0, 0.0};
      for (std::size_t k = start; k < end; ++k) {
        block += z * values[k];
        z *= rot;
      }
      acc += block;
    }
    out[m] = acc * h;
  }
}

// Contracts a tensor of shape (n_1..n_d) against per-axis matrices E_k
// (m_k x n_k), last axis first, giving shape (m_1..m_d).
std::vector<cplx> contract(std::vector<cplx> data, std::vector<std::size_t> shape,
                           const std::vector<std::vector<cplx>>& tables,
                           const std::vector<std::size_t>& out_counts) {
  const std::size_t d = shape.size();
  for (std::size_t k = d; k-- > 0;) {
    const std::size_t outer = std::accumulate(shape.begin(), shape.begin() + k, std::size_t{1},
                                              std::multiplies<>());
    const std::size_t inner = std::accumulate(shape.begin() + k + 1, shape.end(), std::size_t{1},
                                              std::multiplies<>());
    const std::size_t n = shape[k], m = out_counts[k];
    std::vector<cplx> next(outer * m * inner, cplx{0.0, 0.0});
    const auto& e = tables[k];
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t mi = 0; mi < m; ++mi) {
        cplx* dst = &next[(o * m + mi) * inner];
        for (std::size_t ni = 0; ni < n; ++ni) {
          const cplx c = e[mi * n + ni];
          const cplx* src = &data[(o * n + ni) * inner];
          for (std::size_t ii = 0; ii < inner; ++ii) dst[ii] += c * src[ii];
        }
      }
    data = std::move(next);
    shape[k] = m;
  }
  return data;
}

std::vector<double> trapezoid_weights(const std::vector<Grid1D>& axes) {
  const auto ext = extents_of(axes);
  std::vector<double> w(product_count(axes));
  std::array<std::size_t, 2 * kMaxDim> idx{};
  for (std::size_t flat = 0; flat < w.size(); ++flat) {
    unflatten(flat, ext, std::span<std::size_t>(idx.data(), ext.size()));
    double v = 1.0;
    for (std::size_t k = 0; k < ext.size(); ++k) {
      const bool end = idx[k] == 0 || idx[k] + 1 == ext[k];
      v *= axes[k].step() * (end ? 0.5 : 1.0);
    }
    w[flat] = v;
  }
  return w;
}

std::vector<bool> boundary_mask(const std::vector<Grid1D>& axes) {
  const auto ext = extents_of(axes);
  std::vector<bool> b(product_count(axes));
  std::array<std::size_t, 2 * kMaxDim> idx{};
  for (std::size_t flat = 0; flat < b.size(); ++flat) {
    unflatten(flat, ext, std::span<std::size_t>(idx.data(), ext.size()));
    bool edge = false;
    for (std::size_t k = 0; k < ext.size(); ++k) edge = edge || idx[k] == 0 || idx[k] + 1 == ext[k];
    b[flat] = edge;
  }
  return b;
}

double cell_volume(const PhaseSpaceGrid& g) {
  double v = 1.0;
  for (const auto& a : g.axes()) v *= a.step();
  return v;
}

// Per-axis factors applied elementwise over a row-major array.
void apply_axis_factors(std::span<cplx> data, std::span<const std::size_t> extents,
                        const std::vector<std::vector<cplx>>& factors) {
  std::array<std::size_t, 2 * kMaxDim> idx{};
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    unflatten(flat, extents, std::span<std::size_t>(idx.data(), extents.size()));
    cplx f{1.0, 0.0};
    for (std::size_t k = 0; k < extents.size(); ++k) f *= factors[k][idx[k]];
    data[flat] *= f;
  }
}

// e^{2 pi i h n / N} with h = floor(N/2): centers the DFT output.
std::vector<cplx> centering_factors(std::size_t n) {
  std::vector<cplx> c(n);
  const std::size_t h = n / 2;
  for (std::size_t k = 0; k < n; ++k)
    c[k] = cis(kTwoPi * static_cast<double>((h * k) % n) / static_cast<double>(n));
  return c;
}

std::vector<cplx> dual_phase_factors(const Grid1D& axis) {
  const Grid1D dual = dual_axis(axis);
  std::vector<cplx> c(axis.count());
  for (std::size_t j = 0; j < c.size(); ++j)
    c[j] = axis.step() * cis(-kTwoPi * dual.point(j) * axis.start());
  return c;
}

bool axes_close(const Grid1D& a, const Grid1D& b) {
  const double tol = 1e-9 * std::max({1.0, std::abs(a.start()), std::abs(a.stop())});
  return a.count() == b.count() && std::abs(a.start() - b.start()) <= tol &&
         std::abs(a.stop() - b.stop()) <= tol;
}

}  // namespace

PhaseSpaceGrid::PhaseSpaceGrid(std::vector<Grid1D> x, std::vector<Grid1D> w)
    : x_axes(std::move(x)), w_axes(std::move(w)) {
  if (x_axes.empty() || x_axes.size() != w_axes.size())
    fail(ErrorKind::InvalidArgument, "grid needs d x-axes and d w-axes");
  if (x_axes.size() > kMaxDim) fail(ErrorKind::InvalidArgument, "grid dimension too large");
}

PhaseSpaceGrid PhaseSpaceGrid::uniform(std::size_t d, const Grid1D& x, const Grid1D& w) {
  return {std::vector<Grid1D>(d, x), std::vector<Grid1D>(d, w)};
}

std::size_t PhaseSpaceGrid::x_count() const noexcept { return product_count(x_axes); }
std::size_t PhaseSpaceGrid::w_count() const noexcept { return product_count(w_axes); }

std::vector<Grid1D> PhaseSpaceGrid::axes() const {
  std::vector<Grid1D> all = x_axes;
  all.insert(all.end(), w_axes.begin(), w_axes.end());
  return all;
}

void PhaseSpaceGrid::x_point(std::size_t ix, std::span<double> out) const {
  for (std::size_t k = dim(); k-- > 0;) {
    out[k] = x_axes[k].point(ix % x_axes[k].count());
    ix /= x_axes[k].count();
  }
}

void PhaseSpaceGrid::w_point(std::size_t iw, std::span<double> out) const {
  for (std::size_t k = dim(); k-- > 0;) {
    out[k] = w_axes[k].point(iw % w_axes[k].count());
    iw /= w_axes[k].count();
  }
}

void PhaseSpaceGrid::check_size(std::size_t cap) const {
  double total = 1.0;
  for (const auto& a : axes()) total *= static_cast<double>(a.count());
  if (total > static_cast<double>(cap))
    fail(ErrorKind::GridTooLarge, "grid has " + std::to_string(static_cast<long long>(total)) +
                                      " points, cap is " + std::to_string(cap));
}

PhaseSpaceField::PhaseSpaceField(PhaseSpaceGrid g) : grid(std::move(g)) {
  grid.check_size();
  values.assign(grid.size(), cplx{0.0, 0.0});
}

double PhaseSpaceField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const PhaseSpaceField& a, const PhaseSpaceField& b) {
  if (a.values.size() != b.values.size())
    fail(ErrorKind::InvalidArgument, "fields have different sizes");
  double m = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
  return m;
}

std::vector<cplx> mwd_row(const BlockMatrix& a, const Signal& f, const Signal& g,
                          std::span<const double> x, std::span<const Grid1D> w_axes,
                          const QuadratureConfig& q) {
  const std::size_t d = a.dim();
  const std::size_t n = q.samples_for(d);
  const double h = q.step_for(d);
  for (const auto& w : w_axes) oscillation_guard(h, w.max_abs());
  std::vector<std::size_t> counts(d, n);
  std::vector<double> widths(d, q.radius);
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= n;
  std::vector<cplx> integrand(total);
  tail_guard(sample_integrand(a, f, g, x, counts, widths, integrand), q);

  std::size_t out_total = 1;
  for (const auto& w : w_axes) out_total *= w.count();
  const double y0 = -q.radius + 0.5 * h;
  if (d == 1) {
    std::vector<cplx> out(out_total);
    direct_1d(integrand, y0, h, w_axes[0], out);
    return out;
  }
  std::vector<std::vector<cplx>> tables(d);
  std::vector<std::size_t> out_counts(d);
  for (std::size_t k = 0; k < d; ++k) {
    const Grid1D& w = w_axes[k];
    out_counts[k] = w.count();
    tables[k].resize(w.count() * n);
    for (std::size_t m = 0; m < w.count(); ++m)
      for (std::size_t j = 0; j < n; ++j)
        tables[k][m * n + j] = h * cis(-kTwoPi * w.point(m) * (y0 + static_cast<double>(j) * h));
  }
  return contract(std::move(integrand), counts, tables, out_counts);
}

cplx mwd_point(const BlockMatrix& a, const Signal& f, const Signal& g, std::span<const double> x,
               std::span<const double> w, const QuadratureConfig& q) {
  const std::size_t d = a.dim();
  if (x.size() != d || w.size() != d) fail(ErrorKind::InvalidArgument, "point has wrong dimension");
  const std::size_t n = q.samples_for(d);
  const double h = q.step_for(d);
  for (double wk : w) oscillation_guard(h, std::abs(wk));
  std::vector<std::size_t> counts(d, n);
  std::vector<double> widths(d, q.radius);
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= n;
  std::vector<cplx> integrand(total);
  tail_guard(sample_integrand(a, f, g, x, counts, widths, integrand), q);
  std::array<std::size_t, kMaxDim> idx{};
  cplx acc{0.0, 0.0};
  for (std::size_t flat = 0; flat < total; ++flat) {
    unflatten(flat, counts, std::span<std::size_t>(idx.data(), d));
    double phase = 0.0;
    for (std::size_t k = 0; k < d; ++k) phase += w[k] * q.node(d, idx[k]);
    acc += cis(-kTwoPi * phase) * integrand[flat];
  }
  return acc * std::pow(h, static_cast<double>(d));
}

PhaseSpaceField mwd(const BlockMatrix& a, const Signal& f, const Signal& g,
                    const PhaseSpaceGrid& grid, const QuadratureConfig& q) {
  validate(a, f, g, grid);
  const std::size_t d = a.dim();
  for (const auto& w : grid.w_axes) oscillation_guard(q.step_for(d), w.max_abs());
  PhaseSpaceField field(grid);
  const std::size_t nw = grid.w_count();
  parallel_for(grid.x_count(), [&](std::size_t ix) {
    Buf x;
    grid.x_point(ix, std::span<double>(x.data(), d));
    const auto row = mwd_row(a, f, g, std::span<const double>(x.data(), d), grid.w_axes, q);
    std::copy(row.begin(), row.end(), field.values.begin() + static_cast<std::ptrdiff_t>(ix * nw));
  });
  return field;
}

std::size_t FftPlan::total() const noexcept {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count;
  return n;
}

FftPlan plan_fft(std::span<const Grid1D> w_axes, const QuadratureConfig& q) {
  const std::size_t d = w_axes.size();
  const double hq = q.step_for(d);
  FftPlan plan;
  for (const auto& w : w_axes) {
    const double dw = w.step();
    const double width = 2.0 * q.radius;
    const double bins = dw * width;
    FftAxisPlan ax{};
    if (std::abs(bins - std::round(bins)) <= 1e-9 * std::max(1.0, bins) && std::round(bins) >= 1.0) {
      ax.count = q.samples_for(d);
      ax.half_width = q.radius;
      ax.stride = static_cast<std::size_t>(std::round(bins));
    } else {
      ax.stride = static_cast<std::size_t>(std::max(1.0, std::ceil(bins)));
      const double wide = static_cast<double>(ax.stride) / dw;
      ax.count = good_fft_size(static_cast<std::size_t>(std::ceil(wide / hq - 1e-9)));
      ax.half_width = 0.5 * wide;
    }
    ax.step = 2.0 * ax.half_width / static_cast<double>(ax.count);
    plan.axes.push_back(ax);
  }
  if (plan.total() > (std::size_t{1} << 24))
    fail(ErrorKind::GridTooLarge, "FFT window too large for the requested frequency step");
  return plan;
}

Grid1D canonical_w_axis(const QuadratureConfig& q, std::size_t count) {
  const double step = 1.0 / (2.0 * q.radius);
  return Grid1D::from_step(-static_cast<double>(count / 2) * step, step, count);
}

PhaseSpaceField mwd_fft(const BlockMatrix& a, const Signal& f, const Signal& g,
                        const PhaseSpaceGrid& grid, const QuadratureConfig& q) {
  validate(a, f, g, grid);
  const std::size_t d = a.dim();
  const FftPlan plan = plan_fft(grid.w_axes, q);
  std::vector<std::size_t> counts;
  std::vector<double> widths;
  double cell = 1.0;
  std::vector<std::vector<cplx>> premod(d), post(d);
  for (std::size_t k = 0; k < d; ++k) {
    const auto& ax = plan.axes[k];
    const Grid1D& w = grid.w_axes[k];
    oscillation_guard(ax.step, w.max_abs());
    counts.push_back(ax.count);
    widths.push_back(ax.half_width);
    cell *= ax.step;
    premod[k].resize(ax.count);
    for (std::size_t n = 0; n < ax.count; ++n)
      premod[k][n] = cis(-kTwoPi * w.start() * static_cast<double>(n) * ax.step);
    const double y0 = -ax.half_width + 0.5 * ax.step;
    post[k].resize(w.count());
    for (std::size_t m = 0; m < w.count(); ++m) post[k][m] = cis(-kTwoPi * w.point(m) * y0);
  }

  PhaseSpaceField field(grid);
  const std::size_t nw = grid.w_count();
  const auto w_ext = extents_of(grid.w_axes);
  parallel_for(grid.x_count(), [&](std::size_t ix) {
    Buf x;
    grid.x_point(ix, std::span<double>(x.data(), d));
    std::vector<cplx> buf(plan.total());
    tail_guard(sample_integrand(a, f, g, std::span<const double>(x.data(), d), counts, widths, buf,
                                q.radius),
               q);
    apply_axis_factors(buf, counts, premod);
    dft(buf, counts, -1);
    std::array<std::size_t, kMaxDim> idx{};
    for (std::size_t iw = 0; iw < nw; ++iw) {
      unflatten(iw, w_ext, std::span<std::size_t>(idx.data(), d));
      std::size_t src = 0;
      cplx phase{cell, 0.0};
      for (std::size_t k = 0; k < d; ++k) {
        src = src * counts[k] + (idx[k] * plan.axes[k].stride) % counts[k];
        phase *= post[k][idx[k]];
      }
      field.values[ix * nw + iw] = phase * buf[src];
    }
  });
  return field;
}

BlockMatrix distribution_matrix(Distribution kind, std::size_t d, double tau) {
  switch (kind) {
    case Distribution::Wigner: return named::wigner(d);
    case Distribution::Tau: return named::tau(d, tau);
    case Distribution::Rihaczek: return named::rihaczek(d);
    case Distribution::ConjRihaczek: return named::conj_rihaczek(d);
    case Distribution::Stft: return named::stft(d);
    case Distribution::Ambiguity: return named::ambiguity(d);
  }
  fail(ErrorKind::InvalidArgument, "unknown distribution");
}

PhaseSpaceField specialize(Distribution kind, const Signal& f, const Signal& g,
                           const PhaseSpaceGrid& grid, const QuadratureConfig& q, double tau) {
  return mwd(distribution_matrix(kind, f.dim(), tau), f, g, grid, q);
}

std::vector<cplx> marginal_time(const PhaseSpaceField& field, double tail_tol) {
  const auto weights = trapezoid_weights(field.grid.w_axes);
  const auto edge = boundary_mask(field.grid.w_axes);
  const std::size_t nx = field.grid.x_count(), nw = field.grid.w_count();
  std::vector<cplx> out(nx);
  double boundary = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    cplx acc{0.0, 0.0};
    for (std::size_t iw = 0; iw < nw; ++iw) {
      const cplx v = field.at(ix, iw);
      acc += weights[iw] * v;
      if (edge[iw]) boundary = std::max(boundary, std::abs(v));
    }
    out[ix] = acc;
  }
  if (boundary > tail_tol)
    fail(ErrorKind::TailTooFat, "field does not decay at the frequency boundary");
  return out;
}

std::vector<cplx> marginal_freq(const PhaseSpaceField& field, double tail_tol) {
  const auto weights = trapezoid_weights(field.grid.x_axes);
  const auto edge = boundary_mask(field.grid.x_axes);
  const std::size_t nx = field.grid.x_count(), nw = field.grid.w_count();
  std::vector<cplx> out(nw, cplx{0.0, 0.0});
  double boundary = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix)
    for (std::size_t iw = 0; iw < nw; ++iw) {
      const cplx v = field.at(ix, iw);
      out[iw] += weights[ix] * v;
      if (edge[ix]) boundary = std::max(boundary, std::abs(v));
    }
  if (boundary > tail_tol) fail(ErrorKind::TailTooFat, "field does not decay at the time boundary");
  return out;
}

cplx total_mass(const PhaseSpaceField& field) {
  const auto weights = trapezoid_weights(field.grid.axes());
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < field.values.size(); ++k) acc += weights[k] * field.values[k];
  return acc;
}

Grid1D dual_axis(const Grid1D& axis) {
  const std::size_t n = axis.count();
  const double step = 1.0 / (static_cast<double>(n) * axis.step());
  return Grid1D::from_step(-static_cast<double>(n / 2) * step, step, n);
}

PhaseSpaceField field_fourier(const PhaseSpaceField& field) {
  const auto axes = field.grid.axes();
  const auto ext = extents_of(axes);
  std::vector<std::vector<cplx>> pre, postf;
  for (const auto& a : axes) {
    pre.push_back(centering_factors(a.count()));
    postf.push_back(dual_phase_factors(a));
  }
  const std::size_t d = field.grid.dim();
  std::vector<Grid1D> xi, eta;
  for (std::size_t k = 0; k < d; ++k) {
    xi.push_back(dual_axis(field.grid.x_axes[k]));
    eta.push_back(dual_axis(field.grid.w_axes[k]));
  }
  PhaseSpaceField out(PhaseSpaceGrid(std::move(xi), std::move(eta)));
  out.values = field.values;
  apply_axis_factors(out.values, ext, pre);
  dft(out.values, ext, -1);
  apply_axis_factors(out.values, ext, postf);
  return out;
}

PhaseSpaceField field_inverse_fourier(const PhaseSpaceField& spectrum,
                                      const PhaseSpaceGrid& original) {
  const auto axes = original.axes();
  const auto spec_axes = spectrum.grid.axes();
  if (axes.size() != spec_axes.size())
    fail(ErrorKind::InvalidArgument, "spectrum and grid differ in dimension");
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (!axes_close(dual_axis(axes[k]), spec_axes[k]))
      fail(ErrorKind::InvalidArgument, "spectrum does not live on the dual lattice of the grid");
  const auto ext = extents_of(axes);
  std::vector<std::vector<cplx>> pre, postf;
  double norm = 1.0;
  for (const auto& a : axes) {
    auto c = centering_factors(a.count());
    for (auto& v : c) v = std::conj(v);
    pre.push_back(std::move(c));
    auto p = dual_phase_factors(a);
    for (auto& v : p) v = 1.0 / v;
    postf.push_back(std::move(p));
    norm *= static_cast<double>(a.count());
  }
  PhaseSpaceField out(original);
  out.values = spectrum.values;
  apply_axis_factors(out.values, ext, postf);
  dft(out.values, ext, +1);
  for (auto& v : out.values) v /= norm;
  apply_axis_factors(out.values, ext, pre);
  return out;
}

PhaseSpaceField field_symplectic_fourier(const PhaseSpaceField& field) {
  const PhaseSpaceField ff = field_fourier(field);
  const std::size_t d = field.grid.dim();
  std::vector<Grid1D> new_x, new_w;
  for (std::size_t k = 0; k < d; ++k) {
    const Grid1D& eta = ff.grid.w_axes[k];
    const double start = -eta.start() - static_cast<double>(eta.count() - 1) * eta.step();
    new_x.push_back(Grid1D::from_step(start, eta.step(), eta.count()));
    new_w.push_back(ff.grid.x_axes[k]);
  }
  PhaseSpaceField out(PhaseSpaceGrid(std::move(new_x), std::move(new_w)));
  const auto x_ext = extents_of(out.grid.x_axes);
  const auto w_ext = extents_of(out.grid.w_axes);
  const std::size_t nx = out.grid.x_count(), nw = out.grid.w_count();
  std::array<std::size_t, kMaxDim> ix_idx{};
  for (std::size_t ix = 0; ix < nx; ++ix) {
    unflatten(ix, x_ext, std::span<std::size_t>(ix_idx.data(), d));
    // new x index i maps to eta index N - 1 - i in every dimension
    std::size_t eta_flat = 0;
    for (std::size_t k = 0; k < d; ++k) eta_flat = eta_flat * x_ext[k] + (x_ext[k] - 1 - ix_idx[k]);
    for (std::size_t iw = 0; iw < nw; ++iw) out.at(ix, iw) = ff.at(iw, eta_flat);
  }
  (void)w_ext;
  return out;
}

cplx field_inner(const PhaseSpaceField& a, const PhaseSpaceField& b) {
  if (!(a.grid == b.grid)) fail(ErrorKind::InvalidArgument, "fields live on different grids");
  cplx acc{0.0, 0.0};
  for (std::size_t k = 0; k < a.values.size(); ++k) acc += a.values[k] * std::conj(b.values[k]);
  return acc * cell_volume(a.grid);
}

double field_lp_norm(const PhaseSpaceField& field, double p) {
  if (std::isinf(p)) return field.max_abs();
  double acc = 0.0;
  for (const auto& v : field.values) acc += std::pow(std::abs(v), p);
  return std::pow(acc * cell_volume(field.grid), 1.0 / p);
}

}  // namespace mwdlab
