#include "mwdlab/cohen.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mwdlab/error.hpp"

namespace mwdlab {

namespace {

cplx cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void require_dim(const SquareMatrix& m, std::span<const double> a, std::span<const double> b) {
  if (a.size() != m.dim() || b.size() != m.dim())
    fail(ErrorKind::InvalidArgument, "point dimension does not match kernel");
}

std::vector<double> point_x(const PhaseSpaceGrid& grid, std::size_t ix) {
  std::vector<double> v(grid.dim());
  grid.x_point(ix, v);
  return v;
}

std::vector<double> point_w(const PhaseSpaceGrid& grid, std::size_t iw) {
  std::vector<double> v(grid.dim());
  grid.w_point(iw, v);
  return v;
}

}  // namespace

CohenKernel theta(const SquareMatrix& m) {
  CohenKernel k{m, KernelKind::Chirp, SquareMatrix(m.dim()), 0.0};
  if (m.max_abs() == 0.0) {
    k.kind = KernelKind::Delta;
    return k;
  }
  const double det = m.determinant();
  if (std::abs(det) < 1e-12 || !m.is_invertible()) {
    k.kind = KernelKind::Singular;
    return k;
  }
  k.m_inv = m.inverse();
  k.inv_abs_det = 1.0 / std::abs(det);
  return k;
}

cplx eval_theta(const CohenKernel& k, std::span<const double> x, std::span<const double> w) {
  if (k.kind == KernelKind::Delta)
    fail(ErrorKind::SingularKernel, "theta_0 is the Dirac delta; no pointwise values");
  if (k.kind == KernelKind::Singular)
    fail(ErrorKind::SingularKernel, "theta_M with singular M has no pointwise form");
  require_dim(k.m, x, w);
  std::vector<double> mw = k.m_inv.apply(w);
  return k.inv_abs_det * cis(kTwoPi * dot(x, mw));
}

cplx eval_theta(const CohenKernel& k, double x, double w) {
  return eval_theta(k, std::span<const double>(&x, 1), std::span<const double>(&w, 1));
}

cplx theta_hat(const SquareMatrix& m, std::span<const double> xi, std::span<const double> eta) {
  require_dim(m, xi, eta);
  return cis(-kTwoPi * dot(xi, m.apply(eta)));
}

cplx chi(const SquareMatrix& m, std::span<const double> xi, std::span<const double> eta) {
  require_dim(m, xi, eta);
  return cis(kTwoPi * dot(eta, m.apply(xi)));
}

GaussianClosedForm gaussian_closed_form(const SquareMatrix& m, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  const std::size_t d = m.dim();
  const SquareMatrix s = SquareMatrix::identity(d) + 4.0 * (m.transpose() * m);
  const double det_s = s.determinant();
  const double prefactor =
      std::pow(2.0 * lambda, 0.5 * static_cast<double>(d)) / std::sqrt(det_s);
  return {m, lambda, s, s.inverse(), prefactor};
}

cplx gaussian_oracle(const GaussianClosedForm& g, std::span<const double> x,
                     std::span<const double> w) {
  require_dim(g.m, x, w);
  const std::vector<double> mtx = g.m.transpose().apply(x);
  const std::vector<double> s_mtx = g.s_inv.apply(mtx);
  const std::vector<double> s_w = g.s_inv.apply(w);
  const double real_exp = -2.0 * kPi * dot(x, x) / g.lambda +
                          8.0 * kPi * dot(mtx, s_mtx) / g.lambda -
                          2.0 * kPi * g.lambda * dot(w, s_w);
  const double phase = 8.0 * kPi * dot(s_w, mtx);
  return g.prefactor * std::exp(real_exp) * cis(phase);
}

cplx gaussian_oracle(const SquareMatrix& m, double lambda, std::span<const double> x,
                     std::span<const double> w) {
  return gaussian_oracle(gaussian_closed_form(m, lambda), x, w);
}

cplx gaussian_oracle_sigma(const SquareMatrix& m, double lambda, std::span<const double> x,
                           std::span<const double> w) {
  const GaussianClosedForm g = gaussian_closed_form(m, lambda);
  const std::size_t d = m.dim();
  const SquareMatrix r_inv = (SquareMatrix::identity(d) + 4.0 * (m * m.transpose())).inverse();
  const SquareMatrix ms = m * g.s_inv;
  const SquareMatrix sm = g.s_inv * m.transpose();
  // z.Sigma z with Sigma = [[(2/l) R^{-1}, -4i M S^{-1}], [-4i S^{-1} M^T, 2 l S^{-1}]]
  const double re = (2.0 / lambda) * dot(x, r_inv.apply(x)) + 2.0 * lambda * dot(w, g.s_inv.apply(w));
  const double im = -4.0 * dot(x, ms.apply(w)) - 4.0 * dot(w, sm.apply(x));
  const cplx quad{re, im};
  return g.prefactor * std::exp(-kPi * quad);
}

PhaseSpaceField gaussian_oracle_field(const SquareMatrix& m, double lambda,
                                      const PhaseSpaceGrid& grid) {
  const GaussianClosedForm g = gaussian_closed_form(m, lambda);
  PhaseSpaceField field(grid);
  std::vector<double> x(grid.dim()), w(grid.dim());
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    grid.x_point(ix, x);
    for (std::size_t iw = 0; iw < grid.w_count(); ++iw) {
      grid.w_point(iw, w);
      field.at(ix, iw) = gaussian_oracle(g, x, w);
    }
  }
  return field;
}

CheckReport verify_characterization(const SquareMatrix& m, const Signal& f, const Signal& g,
                                    const PhaseSpaceGrid& grid, const QuadratureConfig& q,
                                    double tolerance) {
  const PhaseSpaceField b = mwd_fft(named::cohen(m), f, g, grid, q);
  const PhaseSpaceField lhs = field_symplectic_fourier(b);
  const PhaseSpaceField amb = mwd_fft(named::ambiguity(m.dim()), f, g, lhs.grid, q);
  double err = 0.0;
  for (std::size_t ix = 0; ix < lhs.grid.x_count(); ++ix) {
    const auto x = point_x(lhs.grid, ix);
    for (std::size_t iw = 0; iw < lhs.grid.w_count(); ++iw) {
      const auto w = point_w(lhs.grid, iw);
      err = std::max(err, std::abs(lhs.at(ix, iw) - chi(m, x, w) * amb.at(ix, iw)));
    }
  }
  return make_report("characterization", err, tolerance,
                     {{"M", describe(m)}, {"grid", describe(grid)}});
}

PhaseSpaceField multiplier_spectrum(const SquareMatrix& m1, const SquareMatrix& m2,
                                    const PhaseSpaceField& spectrum1) {
  PhaseSpaceField out = spectrum1;
  if (m1 == m2) return out;
  const SquareMatrix diff = m2 - m1;
  const auto& grid = out.grid;
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    const auto xi = point_x(grid, ix);
    for (std::size_t iw = 0; iw < grid.w_count(); ++iw) {
      const auto eta = point_w(grid, iw);
      out.at(ix, iw) *= theta_hat(diff, xi, eta);
    }
  }
  return out;
}

PhaseSpaceField multiplier_relate(const SquareMatrix& m1, const SquareMatrix& m2,
                                  const PhaseSpaceField& field1) {
  const PhaseSpaceField spec = multiplier_spectrum(m1, m2, field_fourier(field1));
  return field_inverse_fourier(spec, field1.grid);
}

std::vector<CheckReport> check_theta_conditions(
    const SquareMatrix& m, const std::vector<std::pair<std::vector<double>, std::vector<double>>>& points,
    double lambda, double tolerance) {
  const std::size_t d = m.dim();
  const std::vector<double> zero(d, 0.0);
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0, e5 = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& [x, w] = points[k];
    const cplx t = theta_hat(m, x, w);
    e1 = std::max({e1, std::abs(theta_hat(m, zero, w) - 1.0), std::abs(theta_hat(m, x, zero) - 1.0)});
    e2 = std::max(e2, std::abs(std::abs(t) - 1.0));
    std::vector<double> mx(d), mw(d), lx(d), lw(d);
    for (std::size_t i = 0; i < d; ++i) {
      mx[i] = -x[i];
      mw[i] = -w[i];
      lx[i] = lambda * x[i];
      lw[i] = w[i] / lambda;
    }
    e3 = std::max({e3, std::abs(theta_hat(m, mx, mw) - t), std::abs(std::conj(t) - theta_hat(m, mx, w))});
    const auto& [x2, w2] = points[(k + 1) % points.size()];
    std::vector<double> ws(d), xs(d);
    for (std::size_t i = 0; i < d; ++i) {
      ws[i] = w[i] + w2[i];
      xs[i] = x[i] + x2[i];
    }
    e4 = std::max({e4, std::abs(theta_hat(m, x, ws) - t * theta_hat(m, x, w2)),
                   std::abs(theta_hat(m, xs, w) - t * theta_hat(m, x2, w))});
    e5 = std::max(e5, std::abs(theta_hat(m, lx, lw) - t));
  }
  const std::map<std::string, std::string> det{{"M", describe(m)},
                                               {"points", std::to_string(points.size())}};
  return {make_report("theta-condition-i", e1, tolerance, det),
          make_report("theta-condition-ii", e2, tolerance, det),
          make_report("theta-condition-iii", e3, tolerance, det),
          make_report("theta-condition-iv", e4, tolerance, det),
          make_report("theta-condition-v", e5, tolerance, det)};
}

}  // namespace mwdlab
