#include <gtest/gtest.h>

#include "mwdlab/engine.hpp"
#include "mwdlab/error.hpp"
#include "mwdlab/identities.hpp"
#include "test_support.hpp"

using namespace mwdlab;

namespace {

const QuadratureConfig kQ{};

PhaseSpaceGrid grid1(double lo, double hi, std::size_t n) {
  return PhaseSpaceGrid::uniform(1, Grid1D(lo, hi, n), Grid1D(lo, hi, n));
}

double max_imag(const PhaseSpaceField& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v.imag()));
  return m;
}

}  // namespace

TEST(Engine, WignerGaussianAtOrigin) {
  const double zero[2] = {0.0, 0.0};
  const Signal g1 = Signal::gaussian(1, 1.0);
  EXPECT_NEAR(std::abs(mwd_point(named::wigner(1), g1, g1, {zero, 1}, {zero, 1}, kQ) - std::sqrt(2.0)),
              0.0, 1e-12);
  const Signal g2 = Signal::gaussian(2, 1.0);
  EXPECT_NEAR(std::abs(mwd_point(named::wigner(2), g2, g2, zero, zero, kQ) - 2.0), 0.0, 1e-10);
}

TEST(Engine, RihaczekGaussianClosedForm) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceGrid grid = grid1(-3, 3, 24);
  const PhaseSpaceField f = mwd(named::rihaczek(1), g, g, grid, kQ);
  double err = 0.0;
  for (std::size_t ix = 0; ix < 24; ++ix)
    for (std::size_t iw = 0; iw < 24; ++iw) {
      const double x = grid.x_axes[0].point(ix), w = grid.w_axes[0].point(iw);
      const cplx want = std::polar(std::exp(-kPi * (x * x + w * w)), -kTwoPi * x * w);
      err = std::max(err, std::abs(f.at(ix, iw) - want));
    }
  EXPECT_LE(err, 1e-8);
}

TEST(Engine, StftMatrixGaussianAtOrigin) {
  const double zero = 0.0;
  const Signal g = Signal::gaussian(1, 1.0);
  EXPECT_NEAR(std::abs(mwd_point(named::stft(1), g, g, {&zero, 1}, {&zero, 1}, kQ) - 1.0 / std::sqrt(2.0)),
              0.0, 1e-12);
}

TEST(Engine, DirectAgainstIndependentQuadrature) {
  const BlockMatrix a = test::random_decaying();
  const Signal f = Signal::gaussian(1, 1.0), g = Signal::hermite(1);
  for (int k = 0; k < 5; ++k) {
    const double x = test::uniform(-1, 1), w = test::uniform(-1, 1);
    const cplx oracle = test::riemann(
        [&](double y) {
          return std::polar(1.0, -kTwoPi * w * y) * f.evaluate(a.a11(0, 0) * x + a.a12(0, 0) * y) *
                 std::conj(g.evaluate(a.a21(0, 0) * x + a.a22(0, 0) * y));
        },
        40.0, 200000);
    QuadratureConfig q;
    q.radius = 40.0;
    q.samples_per_dim = 1 << 16;
    EXPECT_NEAR(std::abs(mwd_point(a, f, g, {&x, 1}, {&w, 1}, q) - oracle), 0.0, 1e-8);
  }
}

TEST(Engine, FftMatchesDirectOnGaussian) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceGrid grid = grid1(-3, 3, 32);
  EXPECT_LE(max_abs_diff(mwd(named::wigner(1), g, g, grid, kQ), mwd_fft(named::wigner(1), g, g, grid, kQ)),
            1e-8);
}

TEST(Engine, AmbiguityThroughSymplecticFourier) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceGrid grid = grid1(-4, 4, 64);
  const PhaseSpaceField sf = field_symplectic_fourier(mwd_fft(named::wigner(1), g, g, grid, kQ));
  const PhaseSpaceField amb = mwd(named::ambiguity(1), g, g, sf.grid, kQ);
  EXPECT_LE(max_abs_diff(sf, amb), 1e-6);
}

TEST(Engine, SymplecticFourierIsInvolution) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceGrid grid = grid1(-4, 4, 64);
  const PhaseSpaceField w = mwd_fft(named::wigner(1), g, g, grid, kQ);
  const PhaseSpaceField twice = field_symplectic_fourier(field_symplectic_fourier(w));
  // the x lattice comes back negated, so compare on the shared points
  const Grid1D& xo = w.grid.x_axes[0];
  const Grid1D& xt = twice.grid.x_axes[0];
  ASSERT_EQ(twice.grid.w_axes, w.grid.w_axes);
  std::size_t shared = 0;
  double err = 0.0;
  for (std::size_t it = 0; it < xt.count(); ++it) {
    const double pos = (xt.point(it) - xo.start()) / xo.step();
    const auto io = static_cast<long>(std::lround(pos));
    if (std::abs(pos - io) > 1e-9 || io < 0 || io >= static_cast<long>(xo.count())) continue;
    ++shared;
    for (std::size_t iw = 0; iw < w.grid.w_count(); ++iw)
      err = std::max(err, std::abs(twice.at(it, iw) - w.at(static_cast<std::size_t>(io), iw)));
  }
  EXPECT_EQ(shared, xo.count() - 1);
  EXPECT_LE(err, 1e-8);
}

TEST(Engine, FourierOfField) {
  const Signal f = Signal::gaussian(1, 1.0), g = Signal::hermite(1);
  const auto r = check_fourier_of_field(named::tau(1, 0.3), f, g, grid1(-4, 4, 64), kQ, 1e-6);
  EXPECT_TRUE(r.passed) << r.max_abs_error;
}

TEST(Engine, Specializations) {
  const Signal f = Signal::gaussian(1, 1.0).tf_shift({0.4}, {0.2}), g = Signal::hermite(1);
  const PhaseSpaceGrid grid = grid1(-3, 3, 16);
  EXPECT_EQ(specialize(Distribution::Tau, f, g, grid, kQ, 0.5).values,
            specialize(Distribution::Wigner, f, g, grid, kQ).values);
  EXPECT_EQ(specialize(Distribution::Tau, f, g, grid, kQ, 0.0).values,
            specialize(Distribution::Rihaczek, f, g, grid, kQ).values);
  const PhaseSpaceField st = specialize(Distribution::Stft, f, g, grid, kQ);
  double err = 0.0;
  for (std::size_t ix = 0; ix < 16; ++ix)
    for (std::size_t iw = 0; iw < 16; ++iw)
      err = std::max(err, std::abs(st.at(ix, iw) - stft(f, g, grid.x_axes[0].point(ix),
                                                        grid.w_axes[0].point(iw), kQ)));
  EXPECT_LE(err, 1e-8);
}

TEST(Engine, Marginals) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceGrid grid = grid1(-4, 4, 128);
  const PhaseSpaceField w = mwd_fft(named::wigner(1), g, g, grid, kQ);
  EXPECT_NEAR(std::abs(marginal_time(w)[64] - 1.0), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(total_mass(w) - 1.0 / std::sqrt(2.0)), 0.0, 1e-10);

  const Signal f = Signal::hermite(1).tf_shift({0.3}, {-0.2});
  const PhaseSpaceField r = mwd_fft(named::rihaczek(1), f, f, grid, kQ);
  const auto mf = marginal_freq(r);
  double err = 0.0;
  for (std::size_t iw = 0; iw < 128; ++iw)
    err = std::max(err, std::abs(mf[iw] - std::norm(f.fourier().evaluate(grid.w_axes[0].point(iw)))));
  EXPECT_LE(err, 1e-8);
}

TEST(Engine, Guards) {
  const Signal g = Signal::gaussian(1, 1.0);
  const BlockMatrix singular(SquareMatrix::scalar(1, 1), SquareMatrix::scalar(1, 2),
                             SquareMatrix::scalar(1, 2), SquareMatrix::scalar(1, 4));
  try {
    mwd(singular, g, g, grid1(-1, 1, 4), kQ);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMatrix);
    EXPECT_TRUE(e.is_numerical_guard());
  }
  try {
    grid1(-1, 1, 4096).check_size();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridTooLarge);
  }
  QuadratureConfig tight;
  tight.radius = 1.0;
  try {
    mwd(named::wigner(1), g, g, grid1(-1, 1, 4), tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TailTooFat);
  }
}

TEST(EngineProperty, FftMatchesDirectForRandomCohen) {
  const PhaseSpaceGrid grid = grid1(-3, 3, 32);
  const Signal inputs[] = {Signal::gaussian(1, 1.0), Signal::hermite(1), Signal::hermite(2)};
  for (int k = 0; k < 10; ++k) {
    const SquareMatrix m = SquareMatrix::scalar(1, test::uniform(-1, 1));
    const Signal& f = inputs[k % 3];
    const Signal& g = inputs[(k + 1) % 3];
    const BlockMatrix a = named::cohen(m);
    EXPECT_LE(max_abs_diff(mwd(a, f, g, grid, kQ), mwd_fft(a, f, g, grid, kQ)), 1e-8)
        << "M = " << m(0, 0);
  }
}

TEST(EngineProperty, Interchange) {
  const Signal f = Signal::gaussian(1, 1.0).tf_shift({0.5}, {0.3}), g = Signal::hermite(2);
  for (int k = 0; k < 3; ++k) {
    const auto r = check_interchange(test::random_decaying(), f, g, grid1(-2, 2, 12), kQ, 1e-8);
    EXPECT_TRUE(r.passed) << r.max_abs_error;
  }
}

TEST(EngineProperty, Realness) {
  const PhaseSpaceGrid grid = grid1(-3, 3, 32);
  const Signal shifted = Signal::gaussian(1, 1.0).tf_shift({0.7}, {0.4});
  for (const Signal& f : {Signal::gaussian(1, 1.0), Signal::hermite(3), shifted})
    EXPECT_LE(max_imag(mwd_fft(named::wigner(1), f, f, grid, kQ)), 1e-8);
  EXPECT_GT(max_imag(mwd_fft(named::cohen(SquareMatrix::scalar(1, 0.3)), shifted, shifted, grid, kQ)),
            0.01);
}

TEST(EngineProperty, FundamentalLike) {
  const Signal f = Signal::gaussian(1, 1.0).tf_shift({0.2}, {-0.5}), g = Signal::hermite(1);
  for (int k = 0; k < 3; ++k) {
    const auto r = check_fundamental_like(test::random_decaying(), f, g, grid1(-2, 2, 12), kQ, 1e-6);
    EXPECT_TRUE(r.passed) << r.max_abs_error;
  }
}
