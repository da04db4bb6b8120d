#include "mwdlab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mwdlab/error.hpp"
#include "mwdlab/fft.hpp"

namespace mwdlab {

namespace {

using Vec = std::vector<double>;

cplx cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec negate(Vec v) {
  for (double& e : v) e = -e;
  return v;
}

double max_abs_vec(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::pair<Vec, Vec> apply_block(const BlockMatrix& a, std::span<const double> x,
                                std::span<const double> y) {
  Vec u(a.dim()), v(a.dim());
  a.apply(x, y, u, v);
  return {u, v};
}

Grid1D shifted(const Grid1D& axis, double delta) {
  return Grid1D::from_step(axis.start() + delta, axis.step(), axis.count());
}

/// Grid with every x-axis moved by dx and every w-axis by dw.
PhaseSpaceGrid shifted_grid(const PhaseSpaceGrid& grid, std::span<const double> dx,
                            std::span<const double> dw) {
  PhaseSpaceGrid out = grid;
  for (std::size_t k = 0; k < grid.dim(); ++k) {
    out.x_axes[k] = shifted(grid.x_axes[k], dx[k]);
    out.w_axes[k] = shifted(grid.w_axes[k], dw[k]);
  }
  return out;
}

void require_shift_dims(std::size_t d, const Shift& s) {
  if (s.a.size() != d || s.b.size() != d || s.alpha.size() != d || s.beta.size() != d)
    fail(ErrorKind::InvalidArgument, "shift dimension does not match matrix");
}

std::map<std::string, std::string> details_of(const BlockMatrix& a, const PhaseSpaceGrid& grid) {
  return {{"matrix", describe(a)}, {"grid", describe(grid)}};
}

double abs_det(const BlockMatrix& a) {
  const double det = a.determinant();
  if (!(std::abs(det) > 0.0)) fail(ErrorKind::SingularMatrix, "matrix is singular");
  return std::abs(det);
}

/// Periodic band-limited interpolation weight for a sample at offset s (in
/// sample units) on an n-point period; the Nyquist term is split for even n.
double dirichlet(double s, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double r = std::round(s);
  if (std::abs(s - r) < 1e-12) {
    const long long k = static_cast<long long>(r) % static_cast<long long>(n);
    return k == 0 ? 1.0 : 0.0;
  }
  const double num = std::sin(kPi * s);
  const double den = nn * std::sin(kPi * s / nn);
  if (n % 2 == 0) return num * std::cos(kPi * s / nn) / den;
  return num / den;
}

/// 1-d trapezoid weights times step.
std::vector<double> trapezoid(const Grid1D& axis) {
  std::vector<double> w(axis.count(), axis.step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

}  // namespace

Grid1D negated_axis(const Grid1D& axis) {
  return Grid1D::from_step(-axis.point(axis.count() - 1), axis.step(), axis.count());
}

CheckReport check_moyal(const BlockMatrix& a, const Signal& f1, const Signal& g1,
                        const Signal& f2, const Signal& g2, const PhaseSpaceGrid& grid,
                        const QuadratureConfig& q, double tolerance) {
  const double det = abs_det(a);
  const PhaseSpaceField b1 = mwd_fft(a, f1, g1, grid, q);
  const PhaseSpaceField b2 = mwd_fft(a, f2, g2, grid, q);
  const cplx lhs = field_inner(b1, b2);
  const cplx rhs = inner_product(f1, f2, q) * std::conj(inner_product(g1, g2, q)) / det;
  const double bound =
      std::sqrt(norm_sq(f1, q) * norm_sq(f2, q) * norm_sq(g1, q) * norm_sq(g2, q)) / det;
  auto det_map = details_of(a, grid);
  det_map["lhs"] = std::to_string(lhs.real()) + "+" + std::to_string(lhs.imag()) + "i";
  det_map["rhs"] = std::to_string(rhs.real()) + "+" + std::to_string(rhs.imag()) + "i";
  return make_report("moyal", std::abs(lhs - rhs) / bound, tolerance, det_map);
}

CovarianceParams covariance_params(const BlockMatrix& a, const Shift& shift) {
  require_shift_dims(a.dim(), shift);
  auto [r, s] = apply_block(invert(a), shift.a, shift.b);
  auto [rho, sigma] = apply_block(a.transpose(), shift.alpha, negate(shift.beta));
  return {r, s, rho, sigma};
}

CovarianceParams inverse_covariance_params(const BlockMatrix& a, const Shift& shift) {
  require_shift_dims(a.dim(), shift);
  auto [r, s] = apply_block(a, shift.a, negate(shift.beta));
  auto [rho, sigma] = apply_block(sharp(a), shift.alpha, shift.b);
  return {r, s, rho, negate(sigma)};
}

CheckReport check_covariance(const BlockMatrix& a, const Signal& f, const Signal& g,
                             const Shift& shift, const PhaseSpaceGrid& grid,
                             const QuadratureConfig& q, CovarianceMode mode, double tolerance) {
  const std::size_t d = a.dim();
  const CovarianceParams p = covariance_params(a, shift);
  const PhaseSpaceField lhs =
      mwd_fft(a, f.tf_shift(shift.a, shift.alpha), g.tf_shift(shift.b, shift.beta), grid, q);
  const bool general = mode == CovarianceMode::General;
  const Vec dx = negate(general ? p.r : shift.a);
  const Vec dw = negate(general ? p.sigma : shift.alpha);
  const PhaseSpaceField base = mwd_fft(a, f, g, shifted_grid(grid, dx, dw), q);
  const cplx phase0 = general ? cis(kTwoPi * dot(p.sigma, p.s)) : cplx{1.0, 0.0};
  double err = 0.0;
  Vec x(d), w(d);
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    grid.x_point(ix, x);
    for (std::size_t iw = 0; iw < grid.w_count(); ++iw) {
      grid.w_point(iw, w);
      cplx rhs = base.at(ix, iw);
      if (general) rhs *= phase0 * cis(kTwoPi * (dot(x, p.rho) - dot(w, p.s)));
      err = std::max(err, std::abs(lhs.at(ix, iw) - rhs));
    }
  }
  auto det_map = details_of(a, grid);
  det_map["mode"] = general ? "general" : "translation";
  return make_report(general ? "covariance" : "covariance-translation", err, tolerance, det_map);
}

CheckReport check_covariance_roundtrip(const BlockMatrix& a, const Signal& f, const Signal& g,
                                       const Shift& shift, const PhaseSpaceGrid& grid,
                                       const QuadratureConfig& q, double tolerance) {
  const std::size_t d = a.dim();
  const CovarianceParams inv = inverse_covariance_params(a, shift);
  const CovarianceParams fwd = covariance_params(a, {inv.r, inv.s, inv.rho, inv.sigma});
  double param_err = std::max({max_abs_vec(fwd.r, shift.a), max_abs_vec(fwd.s, negate(shift.beta)),
                               max_abs_vec(fwd.rho, shift.alpha), max_abs_vec(fwd.sigma, shift.b)});

  // B(x - a, w - b), shared by both sides
  const PhaseSpaceField base =
      mwd_fft(a, f, g, shifted_grid(grid, negate(shift.a), negate(shift.b)), q);
  const PhaseSpaceField moved =
      mwd_fft(a, f.tf_shift(inv.r, inv.rho), g.tf_shift(inv.s, inv.sigma), grid, q);
  const cplx c_inv = cis(kTwoPi * dot(shift.b, shift.beta));
  const cplx c_fwd = cis(kTwoPi * dot(fwd.sigma, fwd.s));
  double err_inv = 0.0, err_fwd = 0.0;
  Vec x(d), w(d);
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    grid.x_point(ix, x);
    for (std::size_t iw = 0; iw < grid.w_count(); ++iw) {
      grid.w_point(iw, w);
      const cplx b = base.at(ix, iw);
      const cplx modulated = cis(kTwoPi * (dot(x, shift.alpha) + dot(w, shift.beta))) * b;
      err_inv = std::max(err_inv, std::abs(modulated - c_inv * moved.at(ix, iw)));
      const cplx forward = c_fwd * cis(kTwoPi * (dot(x, fwd.rho) - dot(w, fwd.s))) * b;
      err_fwd = std::max(err_fwd, std::abs(moved.at(ix, iw) - forward));
    }
  }
  auto det_map = details_of(a, grid);
  det_map["param_error"] = std::to_string(param_err);
  det_map["inverse_form_error"] = std::to_string(err_inv);
  det_map["forward_form_error"] = std::to_string(err_fwd);
  return make_report("covariance-roundtrip", std::max({param_err, err_inv, err_fwd}), tolerance,
                     det_map);
}

StpArguments stp_arguments(const BlockMatrix& a, const StpPoint& p) {
  auto [aa, bb] = apply_block(a, p.z1, negate(p.zeta2));
  auto [al, be] = apply_block(sharp(a), p.zeta1, p.z2);
  return {aa, al, bb, negate(be)};
}

StpArguments stp_arguments_cohen(double m, const StpPoint& p) {
  if (p.z1.size() != 1 || p.z2.size() != 1 || p.zeta1.size() != 1 || p.zeta2.size() != 1)
    fail(ErrorKind::Unsupported, "the P_M form is implemented for d = 1");
  // J zeta = (zeta2, -zeta1); P_M = diag(-(m + 1/2), m - 1/2)
  const double j1 = p.zeta2[0], j2 = -p.zeta1[0];
  const double pm1 = -(m + 0.5), pm2 = m - 0.5;
  return {{p.z1[0] + pm1 * j1}, {p.z2[0] + pm2 * j2}, {p.z1[0] + (1.0 + pm1) * j1},
          {p.z2[0] + (1.0 + pm2) * j2}};
}

CheckReport check_stp(const BlockMatrix& a, const Signal& f, const Signal& g, const Signal& phi,
                      const Signal& psi, const std::vector<StpPoint>& points,
                      const PhaseSpaceGrid& grid, const QuadratureConfig& q, double tolerance) {
  const std::size_t d = a.dim();
  const double det = abs_det(a);
  const PhaseSpaceField field = mwd_fft(a, f, g, grid, q);
  double cell = 1.0;
  for (const auto& ax : grid.axes()) cell *= ax.step();
  double err = 0.0;
  Vec x(d), w(d);
  for (const auto& p : points) {
    const PhaseSpaceField window =
        mwd_fft(a, phi, psi, shifted_grid(grid, negate(p.z1), negate(p.z2)), q);
    cplx lhs{0.0, 0.0};
    for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
      grid.x_point(ix, x);
      const double px = dot(p.zeta1, x);
      for (std::size_t iw = 0; iw < grid.w_count(); ++iw) {
        grid.w_point(iw, w);
        lhs += field.at(ix, iw) * std::conj(window.at(ix, iw)) *
               cis(-kTwoPi * (px + dot(p.zeta2, w)));
      }
    }
    lhs *= cell;
    const StpArguments s = stp_arguments(a, p);
    const cplx rhs = cis(-kTwoPi * dot(p.z2, p.zeta2)) * stft(f, phi, s.a, s.alpha, q) *
                     std::conj(stft(g, psi, s.b, s.beta, q)) / det;
    err = std::max(err, std::abs(lhs - rhs));
  }
  auto det_map = details_of(a, grid);
  det_map["points"] = std::to_string(points.size());
  return make_report("short-time-product", err, tolerance, det_map);
}

RowProvider row_provider(const BlockMatrix& a, const Signal& f, const QuadratureConfig& q) {
  return [a, f, q](std::span<const double> x, std::span<const Grid1D> w_axes) {
    return mwd_row(a, f, f, x, w_axes, q);
  };
}

std::vector<cplx> pointwise_invert(const BlockMatrix& a, const RowProvider& provider, cplx f0,
                                   const std::vector<std::vector<double>>& xs,
                                   const QuadratureConfig& q, std::size_t samples) {
  if (std::abs(f0) <= 1e-9) fail(ErrorKind::ZeroAtOrigin, "f(0) vanishes; pick another anchor");
  if (samples < 2) fail(ErrorKind::InvalidArgument, "need at least two w samples");
  const std::size_t d = a.dim();
  const BlockMatrix inv = invert(a);
  const double omega = q.radius;
  const Grid1D axis =
      Grid1D::from_step(-omega, 2.0 * omega / static_cast<double>(samples - 1), samples);
  const std::vector<Grid1D> w_axes(d, axis);
  const std::vector<double> weights = trapezoid(axis);
  std::vector<cplx> out;
  out.reserve(xs.size());
  std::vector<std::size_t> idx(d);
  Vec w(d);
  for (const auto& x : xs) {
    if (x.size() != d) fail(ErrorKind::InvalidArgument, "point dimension does not match matrix");
    const Vec xp = inv.a11.apply(x);
    const Vec c = inv.a21.apply(x);
    const std::vector<cplx> row = provider(xp, w_axes);
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::size_t rem = k;
      double weight = 1.0;
      for (std::size_t i = d; i-- > 0;) {
        idx[i] = rem % samples;
        rem /= samples;
        w[i] = axis.point(idx[i]);
        weight *= weights[idx[i]];
      }
      acc += weight * cis(kTwoPi * dot(c, w)) * row[k];
    }
    out.push_back(acc / std::conj(f0));
  }
  return out;
}

Signal adjoint_apply(const BlockMatrix& a, const Signal& g, const PhaseSpaceField& h,
                     const Grid1D& out, const Grid1D& y) {
  if (a.dim() != 1 || h.grid.dim() != 1 || g.dim() != 1)
    fail(ErrorKind::Unsupported, "the adjoint is implemented for d = 1");
  const double det = abs_det(a);
  const BlockMatrix inv = invert(a);
  const Grid1D& xa = h.grid.x_axes[0];
  const Grid1D& wa = h.grid.w_axes[0];
  const std::size_t nx = xa.count(), nw = wa.count();
  const double dw = wa.step();
  const std::vector<double> wy = trapezoid(y);
  std::vector<cplx> gy(y.count());
  for (std::size_t l = 0; l < y.count(); ++l) gy[l] = g.evaluate(y.point(l));

  std::vector<cplx> values(out.count());
  std::vector<cplx> e(nw), row(nx);
  for (std::size_t k = 0; k < out.count(); ++k) {
    const double u = out.point(k);
    cplx acc{0.0, 0.0};
    for (std::size_t l = 0; l < y.count(); ++l) {
      if (gy[l] == cplx{0.0, 0.0}) continue;
      const double yl = y.point(l);
      const double p = inv.a11(0, 0) * u + inv.a12(0, 0) * yl;
      const double qv = inv.a21(0, 0) * u + inv.a22(0, 0) * yl;
      // F_2 H(p, -q): sum over w of H(., w) e^{2 pi i w q} dw
      const cplx rot = cis(kTwoPi * dw * qv);
      cplx cur = cis(kTwoPi * wa.start() * qv) * dw;
      for (std::size_t j = 0; j < nw; ++j) {
        if (j % 64 == 0) cur = cis(kTwoPi * wa.point(j) * qv) * dw;
        e[j] = cur;
        cur *= rot;
      }
      cplx val{0.0, 0.0};
      const double s0 = (p - xa.start()) / xa.step();
      for (std::size_t i = 0; i < nx; ++i) {
        const double dk = dirichlet(s0 - static_cast<double>(i), nx);
        if (dk == 0.0) continue;
        const cplx* hrow = &h.values[i * nw];
        cplx r{0.0, 0.0};
        for (std::size_t j = 0; j < nw; ++j) r += hrow[j] * e[j];
        val += dk * r;
      }
      acc += val * gy[l] * wy[l];
    }
    values[k] = acc / det;
  }
  return Signal::sampled(out, std::move(values), true);
}

CheckReport adjoint_reconstruct(const BlockMatrix& a, const Signal& g, const Signal& gamma,
                                const Signal& f, const PhaseSpaceGrid& grid,
                                const QuadratureConfig& q, const Grid1D& out, const Grid1D& y,
                                double tolerance) {
  const cplx ip = inner_product(g, gamma, q);
  if (std::abs(ip) < 1e-9)
    fail(ErrorKind::DegenerateWindowPair, "<g, gamma> vanishes; reconstruction is undefined");
  const double det = abs_det(a);
  const PhaseSpaceField h = mwd_fft(a, f, g, grid, q);
  const Signal rec = adjoint_apply(a, gamma, h, out, y);
  const cplx scale = det / std::conj(ip);
  double err = 0.0;
  for (std::size_t k = 0; k < out.count(); ++k) {
    const double u = out.point(k);
    err = std::max(err, std::abs(scale * rec.evaluate(u) - f.evaluate(u)));
  }
  auto det_map = details_of(a, grid);
  det_map["out"] = describe(out);
  return make_report("adjoint-reconstruction", err, tolerance, det_map);
}

cplx right_regular_stft_form(const BlockMatrix& a, const Signal& f, const Signal& g,
                             std::span<const double> x, std::span<const double> w,
                             const QuadratureConfig& q) {
  if (!is_right_regular(a)) fail(ErrorKind::NotRightRegular, "A12 or A22 is singular");
  const SquareMatrix a12_inv = a.a12.inverse();
  const SquareMatrix a22_inv = a.a22.inverse();
  const SquareMatrix a12_sharp = a12_inv.transpose();
  const Vec c = (a.a11 - a.a12 * a22_inv * a.a21).apply(x);
  const Vec dd = a12_sharp.apply(w);
  const Signal g_tilde = g.linear_map(a.a22 * a12_inv);
  const Vec a11x = a.a11.apply(x);
  return cis(kTwoPi * dot(dd, a11x)) * stft(f, g_tilde, c, dd, q) /
         std::abs(a.a12.determinant());
}

DiamondGeometry diamond(double m, std::pair<double, double> i1, std::pair<double, double> i2) {
  const double x1 = i1.first, h1 = i1.second - i1.first;
  const double x2 = i2.first, h2 = i2.second - i2.first;
  if (!(h1 > 0.0 && h2 >= h1 && x1 + h1 < x2))
    fail(ErrorKind::BadIntervals, "need h2 >= h1 > 0 and x1 + h1 < x2");
  DiamondGeometry geom{};
  geom.m = m;
  geom.x1 = x1;
  geom.h1 = h1;
  geom.x2 = x2;
  geom.h2 = h2;
  const double e = x2 + h2;
  geom.v1 = {(m + 0.5) * e - (m - 0.5) * x1, x1 - e};
  geom.v2 = {(m + 0.5) * x1 - (m - 0.5) * e, e - x1};
  const std::array<double, 4> c{x1, x1 + h1, x2, e};
  for (std::size_t k = 0; k < 4; ++k) {
    geom.lines[k] = {1.0, m + 0.5, c[k]};
    geom.lines[k + 4] = {1.0, m - 0.5, c[k]};
  }
  return geom;
}

DiamondCorners computed_corners(const DiamondGeometry& geom, const Signal& f, double cell,
                                double threshold) {
  if (!(cell > 0.0)) fail(ErrorKind::InvalidArgument, "cell must be positive");
  const double lo = geom.x1, hi = geom.x2 + geom.h2;
  const double span = hi - lo;
  const double a = 0.5 - geom.m, b = geom.m + 0.5;
  // x = a s1 + b s2 over the square [lo, hi]^2
  const std::array<double, 4> xs{a * lo + b * lo, a * lo + b * hi, a * hi + b * lo, a * hi + b * hi};
  const double xmin = *std::min_element(xs.begin(), xs.end()) - 1.0;
  const double xmax = *std::max_element(xs.begin(), xs.end()) + 1.0;
  const long kx0 = static_cast<long>(std::floor(xmin / cell));
  const long kx1 = static_cast<long>(std::ceil(xmax / cell));
  const long ky = static_cast<long>(std::ceil(span / cell)) + 1;

  auto row_centroid = [&](long k, double& centroid) {
    const double y = static_cast<double>(k) * cell;
    double sum = 0.0;
    long count = 0;
    for (long i = kx0; i <= kx1; ++i) {
      const double x = static_cast<double>(i) * cell;
      const double v = std::abs(f.evaluate(x + b * y) * std::conj(f.evaluate(x - a * y)));
      if (v > threshold) {
        sum += x;
        ++count;
      }
    }
    if (count == 0) return false;
    centroid = sum / static_cast<double>(count);
    return true;
  };

  DiamondCorners out{};
  out.cell = cell;
  bool found = false;
  for (long k = -ky; k <= ky && !found; ++k) {
    double cx;
    if (row_centroid(k, cx)) {
      out.v1 = {cx, static_cast<double>(k) * cell};
      found = true;
    }
  }
  if (!found) fail(ErrorKind::InvalidArgument, "signal support is empty at this threshold");
  for (long k = ky; k >= -ky; --k) {
    double cx;
    if (row_centroid(k, cx)) {
      out.v2 = {cx, static_cast<double>(k) * cell};
      break;
    }
  }
  return out;
}

Signal two_tone(std::pair<double, double> i1, double w1, std::pair<double, double> i2, double w2) {
  return Signal::sum({{cplx{1.0, 0.0}, Signal::tone(i1.first, i1.second, w1)},
                      {cplx{1.0, 0.0}, Signal::tone(i2.first, i2.second, w2)}});
}

SupportReport support_report(const SquareMatrix& m, const Signal& f, const PhaseSpaceGrid& grid,
                             const QuadratureConfig& q, double threshold) {
  const std::size_t d = m.dim();
  const auto hull = f.support_hull();
  if (!hull) fail(ErrorKind::InvalidArgument, "signal has no compact support hull");
  const PhaseSpaceField field = mwd_fft(named::cohen(m), f, f, grid, q);
  std::vector<double> row_max(grid.x_count(), 0.0);
  double peak = 0.0;
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    for (std::size_t iw = 0; iw < grid.w_count(); ++iw)
      row_max[ix] = std::max(row_max[ix], std::abs(field.at(ix, iw)));
    peak = std::max(peak, row_max[ix]);
  }
  SupportReport rep;
  rep.hull_of_supp_f = *hull;
  Box inflated = *hull;
  for (std::size_t k = 0; k < d; ++k) {
    inflated.lo[k] -= grid.x_axes[k].step();
    inflated.hi[k] += grid.x_axes[k].step();
  }
  Vec x(d);
  double outside = 0.0;
  bool holds = true;
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    grid.x_point(ix, x);
    bool in_supp = true, in_inflated = true;
    for (std::size_t k = 0; k < d; ++k) {
      in_supp = in_supp && x[k] >= hull->lo[k] && x[k] <= hull->hi[k];
      in_inflated = in_inflated && x[k] >= inflated.lo[k] && x[k] <= inflated.hi[k];
    }
    if (!in_supp) outside = std::max(outside, row_max[ix]);
    if (peak == 0.0 || row_max[ix] <= threshold * peak) continue;
    if (!in_inflated) holds = false;
    if (!rep.x_projection_hull) {
      rep.x_projection_hull = Box{x, x};
    } else {
      for (std::size_t k = 0; k < d; ++k) {
        rep.x_projection_hull->lo[k] = std::min(rep.x_projection_hull->lo[k], x[k]);
        rep.x_projection_hull->hi[k] = std::max(rep.x_projection_hull->hi[k], x[k]);
      }
    }
  }
  rep.weak_time_holds = holds;
  rep.outside_ratio = peak > 0.0 ? outside / peak : 0.0;
  return rep;
}

SupportReport support_report_frequency(const SquareMatrix& m, const Signal& f,
                                       const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                       double threshold) {
  return support_report(-m.transpose(), f.fourier(), grid, q, threshold);
}

namespace {

/// Field value index after reversing every x-axis (and/or every w-axis).
std::size_t rev(std::size_t i, std::size_t n) { return n - 1 - i; }

Grid1D scaled_axis(const Grid1D& axis, double s) {
  return Grid1D::from_step(s * axis.start(), s * axis.step(), axis.count());
}

/// Samples of f*g (convolution) and f.g (product) on `axis`, as band-limited
/// sampled signals. d = 1.
std::pair<Signal, Signal> convolution_and_product(const Signal& f, const Signal& g,
                                                  const Grid1D& axis) {
  const std::size_t n = axis.count();
  if (n % 2 != 0) fail(ErrorKind::InvalidArgument, "sample count must be even");
  std::vector<cplx> fs(2 * n), gs(2 * n), prod(n);
  for (std::size_t k = 0; k < n; ++k) {
    fs[k] = f.evaluate(axis.point(k));
    gs[k] = g.evaluate(axis.point(k));
    prod[k] = fs[k] * gs[k];
  }
  dft(fs, -1);
  dft(gs, -1);
  for (std::size_t k = 0; k < 2 * n; ++k) fs[k] *= gs[k];
  dft(fs, +1);
  // linear convolution index i + j sits at 2 start + (i + j) h; t_k = start + k h
  const double shift_d = -axis.start() / axis.step();
  const auto shift = static_cast<std::size_t>(std::llround(shift_d));
  if (std::abs(shift_d - static_cast<double>(shift)) > 1e-9 || shift > n)
    fail(ErrorKind::InvalidArgument, "sampling axis must contain 0 on its lattice");
  std::vector<cplx> conv(n);
  const double scale = axis.step() / static_cast<double>(2 * n);
  for (std::size_t k = 0; k < n; ++k) conv[k] = fs[k + shift] * scale;
  return {Signal::sampled(axis, std::move(conv), true), Signal::sampled(axis, std::move(prod), true)};
}

}  // namespace

std::vector<CheckReport> check_symmetry_scaling_convolution(const SquareMatrix& m,
                                                            const Signal& f, const Signal& g,
                                                            const PhaseSpaceGrid& grid,
                                                            const QuadratureConfig& q,
                                                            double lambda) {
  const std::size_t d = m.dim();
  const BlockMatrix a = named::cohen(m);
  const auto det_map = details_of(a, grid);
  const std::size_t nx = grid.x_count(), nw = grid.w_count();
  std::vector<CheckReport> out;

  const PhaseSpaceField base = mwd_fft(a, f, g, grid, q);

  PhaseSpaceGrid neg_all = grid, neg_w = grid;
  for (std::size_t k = 0; k < d; ++k) {
    neg_all.x_axes[k] = negated_axis(grid.x_axes[k]);
    neg_all.w_axes[k] = negated_axis(grid.w_axes[k]);
    neg_w.w_axes[k] = negated_axis(grid.w_axes[k]);
  }
  {
    const PhaseSpaceField lhs = mwd_fft(a, f.reflect(), g.reflect(), grid, q);
    const PhaseSpaceField rhs = mwd_fft(a, f, g, neg_all, q);
    double err = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iw = 0; iw < nw; ++iw)
        err = std::max(err, std::abs(lhs.at(ix, iw) - rhs.at(rev(ix, nx), rev(iw, nw))));
    out.push_back(make_report("symmetry-reflection", err, 1e-5, det_map));
  }
  {
    const PhaseSpaceField lhs = mwd_fft(a, f.conjugate(), g.conjugate(), grid, q);
    const PhaseSpaceField rhs = mwd_fft(a, f, g, neg_w, q);
    double err = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iw = 0; iw < nw; ++iw)
        err = std::max(err, std::abs(lhs.at(ix, iw) - std::conj(rhs.at(ix, rev(iw, nw)))));
    out.push_back(make_report("symmetry-conjugation", err, 1e-5, det_map));
  }
  {
    const double s = std::abs(lambda);
    PhaseSpaceGrid sg = grid;
    for (std::size_t k = 0; k < d; ++k) {
      sg.x_axes[k] = scaled_axis(grid.x_axes[k], s);
      sg.w_axes[k] = scaled_axis(grid.w_axes[k], 1.0 / s);
      if (lambda < 0.0) {
        sg.x_axes[k] = negated_axis(sg.x_axes[k]);
        sg.w_axes[k] = negated_axis(sg.w_axes[k]);
      }
    }
    const PhaseSpaceField lhs = mwd_fft(a, f.dilate(lambda), g.dilate(lambda), grid, q);
    const PhaseSpaceField rhs = mwd_fft(a, f, g, sg, q);
    double err = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iw = 0; iw < nw; ++iw) {
        const cplx r = lambda < 0.0 ? rhs.at(rev(ix, nx), rev(iw, nw)) : rhs.at(ix, iw);
        err = std::max(err, std::abs(lhs.at(ix, iw) - r));
      }
    auto dm = det_map;
    dm["lambda"] = std::to_string(lambda);
    out.push_back(make_report("scaling", err, 1e-5, dm));
  }
  if (d != 1) return out;

  // convolution and product identities on a sampled window
  const Grid1D& xa = grid.x_axes[0];
  const Grid1D& wa = grid.w_axes[0];
  constexpr std::size_t kSamples = 512;
  const Grid1D sample_axis = Grid1D::from_step(
      -q.radius, 2.0 * q.radius / static_cast<double>(kSamples), kSamples);
  auto [conv, prod] = convolution_and_product(f, g, sample_axis);
  const std::size_t k_half = nx;
  {
    const PhaseSpaceField lhs = mwd_fft(a, conv, conv, grid, q);
    const double dx = xa.step();
    const PhaseSpaceGrid gf({Grid1D::from_step(-static_cast<double>(k_half) * dx, dx, 2 * k_half)},
                            {wa});
    const PhaseSpaceGrid gg(
        {Grid1D::from_step(xa.start() - static_cast<double>(k_half - 1) * dx, dx, nx + 2 * k_half - 1)},
        {wa});
    const PhaseSpaceField bf = mwd_fft(a, f, f, gf, q);
    const PhaseSpaceField bg = mwd_fft(a, g, g, gg, q);
    double err = 0.0;
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t iw = 0; iw < nw; ++iw) {
        cplx acc{0.0, 0.0};
        // x' = (p - k_half) dx, x - x' = start + (i - p + k_half) dx
        for (std::size_t p = 0; p < 2 * k_half; ++p)
          acc += bf.at(p, iw) * bg.at(i + 2 * k_half - 1 - p, iw);
        err = std::max(err, std::abs(lhs.at(i, iw) - acc * dx));
      }
    out.push_back(make_report("convolution", err, 1e-4, det_map));
  }
  {
    const PhaseSpaceField lhs = mwd_fft(a, prod, prod, grid, q);
    const std::size_t kw = nw;
    const double dw = wa.step();
    const PhaseSpaceGrid gf({xa}, {Grid1D::from_step(-static_cast<double>(kw) * dw, dw, 2 * kw)});
    const PhaseSpaceGrid gg(
        {xa}, {Grid1D::from_step(wa.start() - static_cast<double>(kw - 1) * dw, dw, nw + 2 * kw - 1)});
    const PhaseSpaceField bf = mwd_fft(a, f, f, gf, q);
    const PhaseSpaceField bg = mwd_fft(a, g, g, gg, q);
    double err = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t j = 0; j < nw; ++j) {
        cplx acc{0.0, 0.0};
        for (std::size_t p = 0; p < 2 * kw; ++p) acc += bf.at(ix, p) * bg.at(ix, j + 2 * kw - 1 - p);
        err = std::max(err, std::abs(lhs.at(ix, j) - acc * dw));
      }
    out.push_back(make_report("product", err, 1e-4, det_map));
  }
  return out;
}

CheckReport check_orthonormal_basis(const BlockMatrix& a, const std::vector<Signal>& basis,
                                    const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                    double tolerance) {
  const double det = abs_det(a);
  std::vector<PhaseSpaceField> fields;
  for (const auto& e1 : basis)
    for (const auto& e2 : basis) fields.push_back(mwd_fft(a, e1, e2, grid, q));
  double err = 0.0;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const cplx want = i == j ? cplx{1.0 / det, 0.0} : cplx{0.0, 0.0};
      err = std::max(err, std::abs(field_inner(fields[i], fields[j]) - want));
    }
  auto det_map = details_of(a, grid);
  det_map["basis_size"] = std::to_string(basis.size());
  return make_report("orthonormal-basis", err, tolerance, det_map);
}

std::vector<CheckReport> check_marginals(const BlockMatrix& a, const Signal& f,
                                         const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                         double tolerance) {
  const std::size_t d = a.dim();
  const double det = abs_det(a);
  const BlockMatrix s = sharp(a);
  const Signal fh = f.fourier();
  const PhaseSpaceField field = mwd_fft(a, f, f, grid, q);
  const std::vector<cplx> mt = marginal_time(field);
  const std::vector<cplx> mf = marginal_freq(field);
  double cx = 1.0, cw = 1.0;
  for (const auto& ax : grid.x_axes) cx *= ax.step();
  for (const auto& ax : grid.w_axes) cw *= ax.step();
  Vec x(d), w(d);
  double et = 0.0, ef = 0.0;
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    grid.x_point(ix, x);
    const cplx want = f.evaluate(a.a11.apply(x)) * std::conj(f.evaluate(a.a21.apply(x)));
    et += std::abs(mt[ix] - want) * cx;
  }
  for (std::size_t iw = 0; iw < grid.w_count(); ++iw) {
    grid.w_point(iw, w);
    const Vec u = s.a12.apply(w);
    const Vec v = negate(s.a22.apply(w));
    const cplx want = fh.evaluate(u) * std::conj(fh.evaluate(v)) / det;
    ef += std::abs(mf[iw] - want) * cw;
  }
  const auto det_map = details_of(a, grid);
  return {make_report("marginal-time", et, tolerance, det_map),
          make_report("marginal-frequency", ef, tolerance, det_map)};
}

double lq_bound(const BlockMatrix& a, double p, double q_exp, double f_norm_p,
                double g_norm_pprime) {
  if (!is_right_regular(a)) fail(ErrorKind::NotRightRegular, "A12 or A22 is singular");
  if (!(p > 1.0) || !(q_exp >= 2.0))
    fail(ErrorKind::InvalidArgument, "need p > 1 and q >= 2");
  const double pp = p / (p - 1.0);
  if (p < q_exp / (q_exp - 1.0) - 1e-12 || p > q_exp + 1e-12)
    fail(ErrorKind::InvalidArgument, "need q' <= p <= q");
  const double det = std::abs(a.determinant());
  const double d12 = std::abs(a.a12.determinant());
  const double d22 = std::abs(a.a22.determinant());
  return f_norm_p * g_norm_pprime /
         (std::pow(det, 1.0 / q_exp) * std::pow(d12, 1.0 / p - 1.0 / q_exp) *
          std::pow(d22, 1.0 / pp - 1.0 / q_exp));
}

double lq_bound_cohen(const SquareMatrix& m, double p, double q_exp, double f_norm_p,
                      double g_norm_pprime) {
  const CohenMatrix cm = cohen_matrix(m);
  if (!cm.c_m) fail(ErrorKind::NotRightRegular, "M + I/2 or M - I/2 is singular");
  if (!(p > 1.0) || !(q_exp >= 2.0))
    fail(ErrorKind::InvalidArgument, "need p > 1 and q >= 2");
  const double pp = p / (p - 1.0);
  const SquareMatrix half = SquareMatrix::scalar(m.dim(), 0.5);
  const double dp = std::abs((m + half).determinant());
  const double dm = std::abs((m - half).determinant());
  return f_norm_p * g_norm_pprime /
         (std::pow(dp, 1.0 / p - 1.0 / q_exp) * std::pow(dm, 1.0 / pp - 1.0 / q_exp));
}

CheckReport check_lq_bound(const BlockMatrix& a, const Signal& f, const Signal& g, double p,
                           double q_exp, const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                           double slack) {
  const double pp = p / (p - 1.0);
  const double bound = lq_bound(a, p, q_exp, lp_norm(f, p, q), lp_norm(g, pp, q));
  const double lhs = field_lp_norm(mwd_fft(a, f, g, grid, q), q_exp);
  auto det_map = details_of(a, grid);
  det_map["p"] = std::to_string(p);
  det_map["q"] = std::to_string(q_exp);
  det_map["ratio"] = std::to_string(lhs / bound);
  return make_report("lq-bound", std::max(0.0, lhs / bound - 1.0), slack, det_map);
}

CheckReport check_interchange(const BlockMatrix& a, const Signal& f, const Signal& g,
                              const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                              double tolerance) {
  const std::size_t d = a.dim();
  const BlockMatrix c = named::flip(d) * a * named::reflect_second(d);
  const PhaseSpaceField lhs = mwd_fft(a, g, f, grid, q);
  const PhaseSpaceField rhs = mwd_fft(c, f, g, grid, q);
  double err = 0.0;
  for (std::size_t k = 0; k < lhs.values.size(); ++k)
    err = std::max(err, std::abs(lhs.values[k] - std::conj(rhs.values[k])));
  return make_report("interchange", err, tolerance, details_of(a, grid));
}

CheckReport check_fundamental_like(const BlockMatrix& a, const Signal& f, const Signal& g,
                                   const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                   double tolerance) {
  const std::size_t d = a.dim();
  const double det = abs_det(a);
  const BlockMatrix b = named::reflect_second(d) * sharp(a) * named::flip(d);
  PhaseSpaceGrid rg = grid;
  for (std::size_t k = 0; k < d; ++k) {
    rg.x_axes[k] = negated_axis(grid.w_axes[k]);
    rg.w_axes[k] = grid.x_axes[k];
  }
  const PhaseSpaceField lhs = mwd_fft(a, f.fourier(), g.fourier(), grid, q);
  const PhaseSpaceField rhs = mwd_fft(b, f, g, rg, q);
  const std::size_t nw = grid.w_count();
  double err = 0.0;
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix)
    for (std::size_t iw = 0; iw < nw; ++iw)
      err = std::max(err, std::abs(lhs.at(ix, iw) - rhs.at(rev(iw, nw), ix) / det));
  return make_report("fundamental-like", err, tolerance, details_of(a, grid));
}

CheckReport check_fourier_of_field(const BlockMatrix& a, const Signal& f, const Signal& g,
                                   const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                   double tolerance) {
  const std::size_t d = a.dim();
  const PhaseSpaceField spec = field_fourier(mwd_fft(a, f, g, grid, q));
  const PhaseSpaceGrid rg(spec.grid.w_axes, spec.grid.x_axes);
  const PhaseSpaceField rhs = mwd_fft(a * named::j(d), f, g, rg, q);
  double err = 0.0;
  for (std::size_t i = 0; i < spec.grid.x_count(); ++i)
    for (std::size_t j = 0; j < spec.grid.w_count(); ++j)
      err = std::max(err, std::abs(spec.at(i, j) - rhs.at(j, i)));
  return make_report("fourier-of-field", err, tolerance, details_of(a, grid));
}

}  // namespace mwdlab
