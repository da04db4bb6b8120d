#include "mwdlab/signals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "mwdlab/error.hpp"
#include "mwdlab/fft.hpp"

namespace mwdlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using Buf = std::array<double, kMaxDim>;

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, std::string(what) + " must be finite");
}

void require_dim(std::size_t d) {
  if (d == 0 || d > kMaxDim) fail(ErrorKind::InvalidArgument, "signal dimension out of range");
}

// sin(pi u) / (pi u) with the removable singularity filled in.
double sinc(double u) {
  if (std::abs(u) < 1e-8) return 1.0 - (kPi * u) * (kPi * u) / 6.0;
  return std::sin(kPi * u) / (kPi * u);
}

cplx cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

double hermite_value(unsigned n, double t) {
  const double s = std::sqrt(kTwoPi) * t;
  // (2 pi)^{1/4} pi^{-1/4} = 2^{1/4}
  double prev = 0.0;
  double cur = std::pow(2.0, 0.25) * std::exp(-0.5 * s * s);
  for (unsigned k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * s * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

SignalNode::Sampled build_sampled(Grid1D grid, std::vector<cplx> values, bool zero_outside) {
  const std::size_t n = values.size();
  if (n != grid.count()) fail(ErrorKind::InvalidArgument, "sample count does not match grid");
  if (n < 2) fail(ErrorKind::InvalidArgument, "sampled signal needs at least two samples");
  for (const cplx& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorKind::InvalidArgument, "sample values must be finite");
  std::vector<cplx> spec = values;
  dft(spec, -1);
  const std::size_t k = n / 2;
  const bool even = n % 2 == 0;
  std::vector<cplx> coeffs(2 * k + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j <= 2 * k; ++j) {
    const long m = static_cast<long>(j) - static_cast<long>(k);
    const std::size_t idx = m < 0 ? static_cast<std::size_t>(m + static_cast<long>(n))
                                  : static_cast<std::size_t>(m);
    coeffs[j] = spec[idx % n] * inv_n;
  }
  if (even) {
    coeffs.front() *= 0.5;
    coeffs.back() *= 0.5;
  }
  return {grid, std::move(values), zero_outside, std::move(coeffs), even};
}

cplx eval_sampled(const SignalNode::Sampled& s, double t) {
  const double step = s.grid.step();
  const double u = (t - s.grid.start()) / step;
  const double n = static_cast<double>(s.values.size());
  if (!(u >= -0.5 && u <= n - 0.5)) {
    if (s.zero_outside) return {0.0, 0.0};
    fail(ErrorKind::OutOfRange, "sampled signal evaluated outside its span");
  }
  const double r = std::round(u);
  if (std::abs(u - r) < 1e-10 && r >= 0.0 && r < n) return s.values[static_cast<std::size_t>(r)];
  const cplx z = cis(kTwoPi * u / n);
  cplx acc{0.0, 0.0};
  for (std::size_t j = s.coeffs.size(); j-- > 0;) acc = acc * z + s.coeffs[j];
  const double k = static_cast<double>(s.coeffs.size() / 2);
  return acc * cis(-kTwoPi * k * u / n);
}

cplx eval_node(const SignalNode& node, std::span<const double> t);

cplx eval_signal(const Signal& s, std::span<const double> t) { return eval_node(s.node(), t); }

cplx eval_node(const SignalNode& node, std::span<const double> t) {
  const std::size_t d = node.dim;
  return std::visit(
      Overloaded{
          [&](const SignalNode::Gaussian& g) -> cplx {
            double r2 = 0.0;
            for (std::size_t i = 0; i < d; ++i) r2 += t[i] * t[i];
            return {std::exp(-kPi * r2 / g.lambda), 0.0};
          },
          [&](const SignalNode::Hermite& h) -> cplx { return {hermite_value(h.n, t[0]), 0.0}; },
          [&](const SignalNode::WindowedTone& w) -> cplx {
            double phase = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
              if (t[i] < w.box.lo[i] || t[i] > w.box.hi[i]) return {0.0, 0.0};
              phase += w.freq[i] * t[i];
            }
            return cis(kTwoPi * phase);
          },
          [&](const SignalNode::ToneSpectrum& w) -> cplx {
            cplx acc{1.0, 0.0};
            for (std::size_t i = 0; i < d; ++i) {
              const double a = w.box.lo[i], b = w.box.hi[i];
              const double nu = t[i] - w.freq[i];
              acc *= (b - a) * sinc((b - a) * nu) * cis(-kPi * nu * (a + b));
            }
            return acc;
          },
          [&](const SignalNode::TFShift& s) -> cplx {
            Buf u;
            double phase = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
              u[i] = t[i] - s.x[i];
              phase += s.w[i] * t[i];
            }
            return cis(kTwoPi * phase) * eval_signal(s.inner, std::span<const double>(u.data(), d));
          },
          [&](const SignalNode::Dilate& s) -> cplx {
            Buf u;
            for (std::size_t i = 0; i < d; ++i) u[i] = s.lambda * t[i];
            const double amp = std::pow(std::abs(s.lambda), 0.5 * static_cast<double>(d));
            return amp * eval_signal(s.inner, std::span<const double>(u.data(), d));
          },
          [&](const SignalNode::Conjugate& s) -> cplx { return std::conj(eval_signal(s.inner, t)); },
          [&](const SignalNode::Reflect& s) -> cplx {
            Buf u;
            for (std::size_t i = 0; i < d; ++i) u[i] = -t[i];
            return eval_signal(s.inner, std::span<const double>(u.data(), d));
          },
          [&](const SignalNode::Sum& s) -> cplx {
            cplx acc{0.0, 0.0};
            for (const auto& [c, f] : s.terms) acc += c * eval_signal(f, t);
            return acc;
          },
          [&](const SignalNode::Sampled& s) -> cplx { return eval_sampled(s, t[0]); },
          [&](const SignalNode::LinearMap& s) -> cplx {
            Buf u;
            s.b.apply(t.first(d), std::span<double>(u.data(), d));
            return eval_signal(s.inner, std::span<const double>(u.data(), d));
          },
          [&](const SignalNode::Tensor& s) -> cplx {
            cplx acc{1.0, 0.0};
            for (std::size_t i = 0; i < d; ++i) acc *= eval_signal(s.factors[i], t.subspan(i, 1));
            return acc;
          },
      },
      node.body);
}

}  // namespace

Grid1D::Grid1D(double start, double stop, std::size_t count)
    : start_(start), stop_(stop), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(stop))
    fail(ErrorKind::InvalidArgument, "grid bounds must be finite");
  if (count < 2) fail(ErrorKind::InvalidArgument, "grid needs at least two points");
  if (!(stop > start)) fail(ErrorKind::InvalidArgument, "grid stop must exceed start");
}

Grid1D Grid1D::from_step(double start, double step, std::size_t count) {
  return Grid1D(start, start + static_cast<double>(count) * step, count);
}

double Grid1D::max_abs() const noexcept {
  return std::max(std::abs(start_), std::abs(point(count_ - 1)));
}

Signal make_signal(SignalNode node) {
  return Signal(std::make_shared<const SignalNode>(std::move(node)));
}

Signal Signal::gaussian(std::size_t d, double lambda) {
  require_dim(d);
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    fail(ErrorKind::InvalidArgument, "gaussian lambda must be positive");
  return make_signal({d, SignalNode::Gaussian{lambda}});
}

Signal Signal::hermite(unsigned n) { return make_signal({1, SignalNode::Hermite{n}}); }

Signal Signal::tone(Box box, std::vector<double> freq) {
  const std::size_t d = box.lo.size();
  require_dim(d);
  if (box.hi.size() != d || freq.size() != d)
    fail(ErrorKind::InvalidArgument, "tone box and frequency dimensions differ");
  require_finite(box.lo, "tone interval");
  require_finite(box.hi, "tone interval");
  require_finite(freq, "tone frequency");
  for (std::size_t i = 0; i < d; ++i)
    if (!(box.hi[i] > box.lo[i])) fail(ErrorKind::InvalidArgument, "tone interval is empty");
  return make_signal({d, SignalNode::WindowedTone{std::move(box), std::move(freq)}});
}

Signal Signal::tone(double a, double b, double freq) { return tone(Box{{a}, {b}}, {freq}); }

Signal Signal::sum(std::vector<std::pair<cplx, Signal>> terms) {
  if (terms.empty()) fail(ErrorKind::InvalidArgument, "sum needs at least one term");
  const std::size_t d = terms.front().second.dim();
  for (const auto& [c, f] : terms) {
    if (f.dim() != d) fail(ErrorKind::InvalidArgument, "sum terms differ in dimension");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorKind::InvalidArgument, "sum coefficients must be finite");
  }
  return make_signal({d, SignalNode::Sum{std::move(terms)}});
}

Signal Signal::sampled(Grid1D grid, std::vector<cplx> values, bool zero_outside) {
  return make_signal({1, build_sampled(grid, std::move(values), zero_outside)});
}

Signal Signal::tensor(std::vector<Signal> factors) {
  require_dim(factors.size());
  for (const auto& f : factors)
    if (f.dim() != 1) fail(ErrorKind::InvalidArgument, "tensor factors must be one-dimensional");
  const std::size_t d = factors.size();
  return make_signal({d, SignalNode::Tensor{std::move(factors)}});
}

Signal Signal::tf_shift(std::vector<double> x, std::vector<double> w) const {
  if (x.size() != dim() || w.size() != dim())
    fail(ErrorKind::InvalidArgument, "shift dimension does not match signal");
  require_finite(x, "shift");
  require_finite(w, "modulation");
  return make_signal({dim(), SignalNode::TFShift{*this, std::move(x), std::move(w)}});
}

Signal Signal::dilate(double lambda) const {
  if (lambda == 0.0 || !std::isfinite(lambda))
    fail(ErrorKind::InvalidArgument, "dilation factor must be nonzero");
  return make_signal({dim(), SignalNode::Dilate{*this, lambda}});
}

Signal Signal::conjugate() const { return make_signal({dim(), SignalNode::Conjugate{*this}}); }

Signal Signal::reflect() const { return make_signal({dim(), SignalNode::Reflect{*this}}); }

Signal Signal::linear_map(const SquareMatrix& b) const {
  if (b.dim() != dim()) fail(ErrorKind::InvalidArgument, "map dimension does not match signal");
  return make_signal({dim(), SignalNode::LinearMap{*this, b}});
}

std::size_t Signal::dim() const noexcept { return node_->dim; }

SignalKind Signal::kind() const noexcept { return static_cast<SignalKind>(node_->body.index()); }

cplx Signal::evaluate(std::span<const double> t) const {
  if (t.size() != dim()) fail(ErrorKind::InvalidArgument, "evaluation point has wrong dimension");
  return eval_node(*node_, t);
}

Signal Signal::fourier() const {
  const std::size_t d = dim();
  return std::visit(
      Overloaded{
          [&](const SignalNode::Gaussian& g) {
            const double amp = std::pow(g.lambda, 0.5 * static_cast<double>(d));
            const Signal base = gaussian(d, 1.0 / g.lambda);
            return amp == 1.0 ? base : base.scaled(amp);
          },
          [&](const SignalNode::Hermite& h) {
            static constexpr std::array<cplx, 4> kPow{cplx{1, 0}, cplx{0, -1}, cplx{-1, 0},
                                                       cplx{0, 1}};
            return h.n % 4 == 0 ? *this : scaled(kPow[h.n % 4]);
          },
          [&](const SignalNode::WindowedTone& w) {
            return make_signal({d, SignalNode::ToneSpectrum{w.box, w.freq}});
          },
          [&](const SignalNode::ToneSpectrum& w) { return tone(w.box, w.freq).reflect(); },
          [&](const SignalNode::TFShift& s) {
            double xw = 0.0;
            std::vector<double> minus_x(d);
            for (std::size_t i = 0; i < d; ++i) {
              xw += s.x[i] * s.w[i];
              minus_x[i] = -s.x[i];
            }
            return s.inner.fourier().tf_shift(s.w, std::move(minus_x)).scaled(cis(kTwoPi * xw));
          },
          [&](const SignalNode::Dilate& s) { return s.inner.fourier().dilate(1.0 / s.lambda); },
          [&](const SignalNode::Conjugate& s) { return s.inner.fourier().reflect().conjugate(); },
          [&](const SignalNode::Reflect& s) { return s.inner.fourier().reflect(); },
          [&](const SignalNode::Sum& s) {
            std::vector<std::pair<cplx, Signal>> terms;
            terms.reserve(s.terms.size());
            for (const auto& [c, f] : s.terms) terms.emplace_back(c, f.fourier());
            return sum(std::move(terms));
          },
          [&](const SignalNode::Sampled& s) {
            const std::size_t n = s.values.size();
            const double step = s.grid.step();
            const double dxi = 1.0 / (static_cast<double>(n) * step);
            const std::size_t h = n / 2;
            std::vector<cplx> buf(n);
            for (std::size_t k = 0; k < n; ++k)
              buf[k] = s.values[k] * cis(kTwoPi * static_cast<double>((h * k) % n) /
                                         static_cast<double>(n));
            dft(buf, -1);
            const double xi0 = -static_cast<double>(h) * dxi;
            for (std::size_t j = 0; j < n; ++j) {
              const double xi = xi0 + static_cast<double>(j) * dxi;
              buf[j] *= step * cis(-kTwoPi * xi * s.grid.start());
            }
            return sampled(Grid1D::from_step(xi0, dxi, n), std::move(buf), true);
          },
          [&](const SignalNode::LinearMap& s) {
            const double det = std::abs(s.b.determinant());
            const SquareMatrix b_sharp = s.b.inverse().transpose();
            return s.inner.fourier().linear_map(b_sharp).scaled(1.0 / det);
          },
          [&](const SignalNode::Tensor& s) {
            std::vector<Signal> factors;
            factors.reserve(s.factors.size());
            for (const auto& f : s.factors) factors.push_back(f.fourier());
            return tensor(std::move(factors));
          },
      },
      node_->body);
}

std::optional<Box> Signal::support_hull() const {
  const std::size_t d = dim();
  return std::visit(
      Overloaded{
          [&](const SignalNode::Gaussian&) -> std::optional<Box> { return std::nullopt; },
          [&](const SignalNode::Hermite&) -> std::optional<Box> { return std::nullopt; },
          [&](const SignalNode::ToneSpectrum&) -> std::optional<Box> { return std::nullopt; },
          [&](const SignalNode::WindowedTone& w) -> std::optional<Box> { return w.box; },
          [&](const SignalNode::TFShift& s) -> std::optional<Box> {
            auto b = s.inner.support_hull();
            if (!b) return b;
            for (std::size_t i = 0; i < d; ++i) {
              b->lo[i] += s.x[i];
              b->hi[i] += s.x[i];
            }
            return b;
          },
          [&](const SignalNode::Dilate& s) -> std::optional<Box> {
            auto b = s.inner.support_hull();
            if (!b) return b;
            for (std::size_t i = 0; i < d; ++i) {
              const double p = b->lo[i] / s.lambda, q = b->hi[i] / s.lambda;
              b->lo[i] = std::min(p, q);
              b->hi[i] = std::max(p, q);
            }
            return b;
          },
          [&](const SignalNode::Conjugate& s) { return s.inner.support_hull(); },
          [&](const SignalNode::Reflect& s) -> std::optional<Box> {
            auto b = s.inner.support_hull();
            if (!b) return b;
            for (std::size_t i = 0; i < d; ++i) {
              const double lo = -b->hi[i];
              b->hi[i] = -b->lo[i];
              b->lo[i] = lo;
            }
            return b;
          },
          [&](const SignalNode::Sum& s) -> std::optional<Box> {
            std::optional<Box> acc;
            for (const auto& [c, f] : s.terms) {
              if (c == cplx{0.0, 0.0}) continue;
              auto b = f.support_hull();
              if (!b) return std::nullopt;
              if (!acc) {
                acc = b;
                continue;
              }
              for (std::size_t i = 0; i < d; ++i) {
                acc->lo[i] = std::min(acc->lo[i], b->lo[i]);
                acc->hi[i] = std::max(acc->hi[i], b->hi[i]);
              }
            }
            return acc;
          },
          [&](const SignalNode::Sampled& s) -> std::optional<Box> {
            if (!s.zero_outside) return std::nullopt;
            const double h = s.grid.step();
            const double n = static_cast<double>(s.values.size());
            return Box{{s.grid.start() - 0.5 * h}, {s.grid.start() + (n - 0.5) * h}};
          },
          [&](const SignalNode::LinearMap& s) -> std::optional<Box> {
            auto b = s.inner.support_hull();
            if (!b) return b;
            const SquareMatrix inv = s.b.inverse();
            Box out{std::vector<double>(d, std::numeric_limits<double>::infinity()),
                    std::vector<double>(d, -std::numeric_limits<double>::infinity())};
            std::vector<double> corner(d), image(d);
            for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
              for (std::size_t i = 0; i < d; ++i)
                corner[i] = (mask >> i) & 1U ? b->hi[i] : b->lo[i];
              inv.apply(corner, image);
              for (std::size_t i = 0; i < d; ++i) {
                out.lo[i] = std::min(out.lo[i], image[i]);
                out.hi[i] = std::max(out.hi[i], image[i]);
              }
            }
            return out;
          },
          [&](const SignalNode::Tensor& s) -> std::optional<Box> {
            Box out;
            for (const auto& f : s.factors) {
              auto b = f.support_hull();
              if (!b) return std::nullopt;
              out.lo.push_back(b->lo[0]);
              out.hi.push_back(b->hi[0]);
            }
            return out;
          },
      },
      node_->body);
}

namespace {

// Visits every midpoint node of [-R, R]^d.
template <class Fn>
void for_each_node(std::size_t d, const QuadratureConfig& q, Fn&& fn) {
  const std::size_t n = q.samples_for(d);
  std::array<std::size_t, kMaxDim> idx{};
  Buf t;
  for (std::size_t i = 0; i < d; ++i) t[i] = q.node(d, 0);
  while (true) {
    fn(std::span<const double>(t.data(), d));
    std::size_t k = d;
    while (k-- > 0) {
      if (++idx[k] < n) {
        t[k] = q.node(d, idx[k]);
        break;
      }
      idx[k] = 0;
      t[k] = q.node(d, 0);
    }
    if (k == static_cast<std::size_t>(-1)) return;
  }
}

// Largest |fn| over the faces of [-R, R]^d, sampled at midpoint nodes.
template <class Fn>
double boundary_max(std::size_t d, const QuadratureConfig& q, Fn&& fn) {
  double m = 0.0;
  if (d == 1) {
    for (double s : {-q.radius, q.radius}) m = std::max(m, std::abs(fn(std::span<const double>(&s, 1))));
    return m;
  }
  const std::size_t face_n = std::min<std::size_t>(q.samples_for(d), 64);
  Buf t;
  std::array<std::size_t, kMaxDim> idx{};
  for (std::size_t axis = 0; axis < d; ++axis)
    for (double side : {-q.radius, q.radius}) {
      idx.fill(0);
      while (true) {
        for (std::size_t i = 0; i < d; ++i)
          t[i] = i == axis ? side
                           : -q.radius + (static_cast<double>(idx[i]) + 0.5) * 2.0 * q.radius /
                                             static_cast<double>(face_n);
        m = std::max(m, std::abs(fn(std::span<const double>(t.data(), d))));
        std::size_t k = d;
        while (k-- > 0) {
          if (k == axis) continue;
          if (++idx[k] < face_n) break;
          idx[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
  return m;
}

void check_tail(double boundary, const QuadratureConfig& q, const char* what) {
  if (boundary > q.tail_tol && !q.allow_truncation)
    fail(ErrorKind::TailTooFat, std::string(what) + " integrand is " + std::to_string(boundary) +
                                    " at the truncation radius");
}

}  // namespace

cplx inner_product(const Signal& f, const Signal& g, const QuadratureConfig& q) {
  const std::size_t d = f.dim();
  if (g.dim() != d) fail(ErrorKind::InvalidArgument, "inner product of signals of different dimension");
  auto integrand = [&](std::span<const double> t) { return f.evaluate(t) * std::conj(g.evaluate(t)); };
  check_tail(boundary_max(d, q, integrand), q, "inner product");
  cplx acc{0.0, 0.0};
  for_each_node(d, q, [&](std::span<const double> t) { acc += integrand(t); });
  return acc * std::pow(q.step_for(d), static_cast<double>(d));
}

double norm_sq(const Signal& f, const QuadratureConfig& q) { return inner_product(f, f, q).real(); }

double lp_norm(const Signal& f, double p, const QuadratureConfig& q) {
  const std::size_t d = f.dim();
  if (!(p >= 1.0)) fail(ErrorKind::InvalidArgument, "norm exponent must be at least 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for_each_node(d, q, [&](std::span<const double> t) { m = std::max(m, std::abs(f.evaluate(t))); });
    return m;
  }
  check_tail(boundary_max(d, q, [&](std::span<const double> t) { return std::abs(f.evaluate(t)); }),
             q, "norm");
  double acc = 0.0;
  for_each_node(d, q, [&](std::span<const double> t) { acc += std::pow(std::abs(f.evaluate(t)), p); });
  return std::pow(acc * std::pow(q.step_for(d), static_cast<double>(d)), 1.0 / p);
}

cplx stft(const Signal& f, const Signal& g, std::span<const double> x, std::span<const double> w,
          const QuadratureConfig& q) {
  return inner_product(f, g.tf_shift({x.begin(), x.end()}, {w.begin(), w.end()}), q);
}

cplx stft(const Signal& f, const Signal& g, double x, double w, const QuadratureConfig& q) {
  return stft(f, g, std::span<const double>(&x, 1), std::span<const double>(&w, 1), q);
}

Signal sample(const Signal& f, const Grid1D& grid, bool zero_outside) {
  if (f.dim() != 1) fail(ErrorKind::Unsupported, "sampling is limited to d = 1");
  std::vector<cplx> values(grid.count());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = f.evaluate(grid.point(k));
  return Signal::sampled(grid, std::move(values), zero_outside);
}

}  // namespace mwdlab
