#include <gtest/gtest.h>

#include "mwdlab/error.hpp"
#include "mwdlab/signals.hpp"
#include "test_support.hpp"

using namespace mwdlab;

namespace {

const QuadratureConfig kQ{};

std::vector<Signal> closed_form_pairs() {
  std::vector<Signal> out;
  for (double l : {0.5, 1.0, 2.0}) out.push_back(Signal::gaussian(1, l));
  for (unsigned n = 0; n <= 4; ++n) out.push_back(Signal::hermite(n));
  out.push_back(Signal::gaussian(1, 1.0).tf_shift({1.0}, {0.5}));
  out.push_back(Signal::hermite(2).tf_shift({-0.7}, {1.3}));
  return out;
}

}  // namespace

TEST(Signals, Evaluate) {
  EXPECT_EQ(Signal::gaussian(1, 1.0).evaluate(0.0), cplx(1.0));
  EXPECT_NEAR(std::abs(Signal::gaussian(1, 1.0).tf_shift({1.0}, {0.0}).evaluate(1.0) - 1.0), 0.0,
              1e-15);
  EXPECT_NEAR(std::abs(Signal::tone(3, 5, 2).evaluate(4.0) - 1.0), 0.0, 1e-12);
  EXPECT_EQ(Signal::tone(3, 5, 2).evaluate(5.5), cplx(0.0));
}

TEST(Signals, FourierOfGaussians) {
  const Signal g1 = Signal::gaussian(1, 1.0).fourier();
  const Signal g2 = Signal::gaussian(1, 2.0).fourier();
  for (double w : {-1.3, 0.0, 0.4, 2.0}) {
    EXPECT_NEAR(std::abs(g1.evaluate(w) - std::exp(-kPi * w * w)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(g2.evaluate(w) - std::sqrt(2.0) * std::exp(-kPi * w * w * 2.0)), 0.0,
                1e-14);
    // quadrature of the defining integral
    const cplx q = test::riemann(
        [&](double t) { return std::exp(-kPi * t * t / 2.0) * std::polar(1.0, -kTwoPi * t * w); }, 12.0,
        6000);
    EXPECT_NEAR(std::abs(g2.evaluate(w) - q), 0.0, 1e-10);
  }
}

TEST(Signals, FourierTwiceIsReflection) {
  const Signal h = Signal::hermite(1);
  const Signal ff = h.fourier().fourier();
  for (double t : {-2.0, -0.3, 0.0, 0.8, 1.7})
    EXPECT_NEAR(std::abs(ff.evaluate(t) - h.evaluate(-t)), 0.0, 1e-14);
}

TEST(Signals, InnerProducts) {
  const Signal g = Signal::gaussian(1, 1.0);
  EXPECT_NEAR(std::abs(inner_product(g, g, kQ) - 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inner_product(Signal::hermite(0), Signal::hermite(1), kQ)), 0.0, 1e-14);
  for (int k = 0; k < 10; ++k) {
    const Signal f = Signal::sum({{cplx(test::uniform(-1, 1), test::uniform(-1, 1)), Signal::hermite(k % 3)},
                                  {cplx(test::uniform(-1, 1), 0.0),
                                   g.tf_shift({test::uniform(-1, 1)}, {test::uniform(-1, 1)})}});
    const cplx v = inner_product(f, f, kQ);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
    EXPECT_GE(v.real(), 0.0);
  }
}

TEST(Signals, Stft) {
  const Signal g = Signal::gaussian(1, 1.0);
  EXPECT_NEAR(std::abs(stft(g, g, 0.0, 0.0, kQ) - 1.0 / std::sqrt(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(stft(Signal::hermite(1), Signal::hermite(0), 0.0, 0.0, kQ)), 0.0, 1e-14);
}

TEST(Signals, FundamentalIdentity) {
  const Signal f = Signal::gaussian(1, 1.0).tf_shift({0.3}, {-0.2});
  const Signal g = Signal::gaussian(1, 2.0);
  for (int k = 0; k < 10; ++k) {
    const double x = test::uniform(-2, 2), w = test::uniform(-2, 2);
    const cplx lhs = stft(f, g, x, w, kQ);
    const cplx rhs = std::polar(1.0, -kTwoPi * x * w) * stft(f.fourier(), g.fourier(), w, -x, kQ);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-8);
  }
}

TEST(Signals, SampledOutOfRange) {
  const Signal s = sample(Signal::gaussian(1, 1.0), Grid1D(-4, 4, 64), false);
  try {
    s.evaluate(10.0);
    FAIL() << "expected OutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
  const Signal z = sample(Signal::gaussian(1, 1.0), Grid1D(-4, 4, 64), true);
  EXPECT_EQ(z.evaluate(10.0), cplx(0.0));
  EXPECT_NEAR(std::abs(z.evaluate(0.0) - 1.0), 0.0, 1e-12);
}

TEST(Signals, TailGuard) {
  QuadratureConfig q;
  q.radius = 1.0;
  const Signal g = Signal::gaussian(1, 4.0);
  EXPECT_THROW(inner_product(g, g, q), Error);
  q.allow_truncation = true;
  EXPECT_NO_THROW(inner_product(g, g, q));
}

TEST(Signals, BadConstruction) {
  EXPECT_THROW(Signal::gaussian(1, 0.0), Error);
  EXPECT_THROW(Signal::tone(5, 3, 1), Error);
  EXPECT_THROW(Signal::gaussian(1, 1.0).dilate(0.0), Error);
  EXPECT_THROW(Grid1D(0, 1, 1), Error);
}

TEST(SignalsProperty, Parseval) {
  const auto sigs = closed_form_pairs();
  for (const auto& f : sigs)
    for (const auto& g : sigs)
      EXPECT_NEAR(std::abs(inner_product(f, g, kQ) - inner_product(f.fourier(), g.fourier(), kQ)),
                  0.0, 1e-8);
}

TEST(SignalsProperty, Involution) {
  for (const auto& f : closed_form_pairs()) {
    const Signal inv = f.reflect().conjugate();
    for (int k = 0; k < 10; ++k) {
      const double t = test::uniform(-3, 3);
      EXPECT_EQ(inv.evaluate(t), std::conj(f.evaluate(-t)));
    }
  }
}

TEST(SignalsProperty, DilationIsIsometric) {
  for (const auto& f : closed_form_pairs())
    for (double l : {0.5, 2.0, -1.0})
      EXPECT_NEAR(norm_sq(f.dilate(l), kQ), norm_sq(f, kQ), 1e-8);
}

TEST(SignalsProperty, DefaultQuadratureConverged) {
  const Signal g = Signal::gaussian(1, 1.0);
  QuadratureConfig fine;
  fine.samples_per_dim = 2 * kQ.samples_for(1);
  EXPECT_LT(std::abs(inner_product(g, g, kQ) - inner_product(g, g, fine)), 1e-10);
}

TEST(Signals, TensorAndLinearMap) {
  const Signal t = Signal::tensor({Signal::gaussian(1, 1.0), Signal::hermite(1)});
  const double p[2] = {0.3, -0.4};
  EXPECT_NEAR(std::abs(t.evaluate(p) - Signal::gaussian(1, 1.0).evaluate(0.3) *
                                           Signal::hermite(1).evaluate(-0.4)),
              0.0, 1e-15);
  const Signal lm = Signal::gaussian(2, 1.0).linear_map(SquareMatrix{{0, 1}, {-1, 0}});
  EXPECT_NEAR(std::abs(lm.evaluate(p) - Signal::gaussian(2, 1.0).evaluate(p)), 0.0, 1e-15);
}
