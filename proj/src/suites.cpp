#include "mwdlab/suites.hpp"

#include <cmath>

#include "mwdlab/cohen.hpp"
#include "mwdlab/error.hpp"
#include "mwdlab/identities.hpp"

namespace mwdlab {

namespace {

std::vector<double> fill(std::size_t d, double v) { return std::vector<double>(d, v); }

Signal gauss(std::size_t d, double lambda, double x, double w) {
  return Signal::gaussian(d, lambda).tf_shift(fill(d, x), fill(d, w));
}

Signal herm(std::size_t d, unsigned n) {
  if (d == 1) return Signal::hermite(n);
  std::vector<Signal> factors{Signal::hermite(n)};
  for (std::size_t k = 1; k < d; ++k) factors.push_back(Signal::hermite(0));
  return Signal::tensor(std::move(factors));
}

/// [-half, half)^{2d} with n points per axis (fewer for d > 1).
PhaseSpaceGrid box_grid(std::size_t d, double half, std::size_t n) {
  const std::size_t count = d == 1 ? n : 32;
  return PhaseSpaceGrid::uniform(d, Grid1D(-half, half, count), Grid1D(-half, half, count));
}

/// A failing identity reported as a passing negative control.
CheckReport expect_failure(CheckReport r, double min_error) {
  r.name += "-negative-control";
  r.details["expected"] = "error > " + std::to_string(min_error);
  r.tolerance = min_error;
  r.passed = r.max_abs_error > min_error;
  return r;
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

std::vector<SquareMatrix> cohen_list(const SuiteOptions& opt, std::vector<double> defaults) {
  if (opt.m) return {*opt.m};
  std::vector<SquareMatrix> out;
  for (double v : defaults) out.push_back(SquareMatrix{{v}});
  return out;
}

std::vector<CheckReport> moyal(const SuiteOptions& opt) {
  const auto& q = opt.quadrature;
  std::vector<BlockMatrix> mats;
  if (opt.matrix) {
    mats = {*opt.matrix};
  } else {
    mats = {named::wigner(1), named::tau(1, 0.3), named::stft(1),
            BlockMatrix::from_full(SquareMatrix{{0.7, -0.4}, {0.5, 0.9}})};
  }
  std::vector<CheckReport> out;
  for (const auto& a : mats) {
    const std::size_t d = a.dim();
    const PhaseSpaceGrid grid = box_grid(d, 8.0, 256);
    out.push_back(check_moyal(a, gauss(d, 1, 0.3, -0.5), gauss(d, 2, -0.4, 0.2), herm(d, 1),
                              gauss(d, 0.5, 0.1, 0.3), grid, q));
    out.push_back(check_moyal(a, herm(d, 0), herm(d, 0), herm(d, 1), herm(d, 1), grid, q));
  }
  return out;
}

std::vector<CheckReport> covariance(const SuiteOptions& opt) {
  const auto& q = opt.quadrature;
  std::vector<CheckReport> out;
  auto run = [&](const BlockMatrix& a, bool explicit_matrix) {
    const std::size_t d = a.dim();
    const PhaseSpaceGrid grid = box_grid(d, 4.0, 64);
    const Signal f = gauss(d, 1, 0.3, -0.5), g = gauss(d, 2, -0.4, 0.2);
    const Shift same{fill(d, 0.5), fill(d, 0.5), fill(d, 0.3), fill(d, 0.3)};
    const Shift mixed{fill(d, 0.5), fill(d, -0.2), fill(d, 0.3), fill(d, 0.7)};
    out.push_back(check_covariance(a, f, g, mixed, grid, q));
    out.push_back(check_covariance_roundtrip(a, f, g, mixed, grid, q));
    CheckReport tr = check_covariance(a, f, g, same, grid, q, CovarianceMode::Translation);
    if (detect_cohen(a) || explicit_matrix)
      out.push_back(std::move(tr));
    else
      out.push_back(expect_failure(std::move(tr), 0.1));
  };
  if (opt.matrix) {
    run(*opt.matrix, true);
  } else {
    for (const auto& m : cohen_list(opt, {0.0, 0.25, -0.4})) run(named::cohen(m), false);
    run(named::stft(1), false);
  }
  return out;
}

std::vector<CheckReport> stp(const SuiteOptions& opt) {
  const auto& q = opt.quadrature;
  std::vector<BlockMatrix> mats;
  if (opt.matrix) {
    mats = {*opt.matrix};
  } else {
    for (const auto& m : cohen_list(opt, {0.0, 0.25})) mats.push_back(named::cohen(m));
  }
  std::vector<CheckReport> out;
  for (const auto& a : mats) {
    const std::size_t d = a.dim();
    const PhaseSpaceGrid grid = box_grid(d, 8.0, 256);
    std::vector<StpPoint> pts{{fill(d, 0), fill(d, 0), fill(d, 0), fill(d, 0)},
                              {fill(d, 0.3), fill(d, -0.2), fill(d, 0.4), fill(d, 0.1)},
                              {fill(d, -0.5), fill(d, 0.6), fill(d, -0.2), fill(d, 0.3)}};
    out.push_back(check_stp(a, gauss(d, 1, 0.3, -0.5), gauss(d, 2, -0.4, 0.2), gauss(d, 1, 0, 0),
                            gauss(d, 1.5, 0.1, 0), pts, grid, q));
  }
  return out;
}

std::vector<CheckReport> inversion(const SuiteOptions& opt) {
  const auto& q = opt.quadrature;
  const BlockMatrix a = opt.matrix ? *opt.matrix : named::wigner(1);
  if (a.dim() != 1) fail(ErrorKind::Unsupported, "the inversion suite runs in d = 1");
  const Signal f = Signal::gaussian(1, 1.0);
  std::vector<std::vector<double>> xs;
  for (int k = 0; k < 20; ++k) xs.push_back({-2.0 + 0.2 * k + 0.05});
  const auto rec = pointwise_invert(a, row_provider(a, f, q), f.evaluate(0.0), xs, q);
  double err = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) err = std::max(err, std::abs(rec[k] - f.evaluate(xs[k][0])));
  std::vector<CheckReport> out{
      make_report("pointwise-inversion", err, 1e-4, {{"matrix", describe(a)}, {"points", "20"}})};
  const PhaseSpaceGrid grid = PhaseSpaceGrid::uniform(1, Grid1D(-6, 6, 128), Grid1D(-6, 6, 128));
  const Grid1D y = Grid1D::from_step(-4.0, 8.0 / 191.0, 192);
  out.push_back(adjoint_reconstruct(a, f, f, f, grid, q, Grid1D(-3, 3, 64), y));
  return out;
}

std::vector<CheckReport> characterization(const SuiteOptions& opt) {
  const auto& q = opt.quadrature;
  const PhaseSpaceGrid grid = PhaseSpaceGrid::uniform(1, Grid1D(-6, 6, 128), Grid1D(-6, 6, 128));
  std::vector<CheckReport> out;
  for (const auto& m : cohen_list(opt, {0.0, 0.25, -0.4, 0.8})) {
    if (m.dim() != 1) fail(ErrorKind::Unsupported, "the characterization suite runs in d = 1");
    out.push_back(verify_characterization(m, gauss(1, 1, 0.2, 0.4), gauss(1, 1, 0.5, -0.3), grid, q));
    out.push_back(verify_characterization(m, Signal::hermite(1), Signal::hermite(2), grid, q));
  }
  return out;
}

std::vector<CheckReport> support(const SuiteOptions& opt) {
  QuadratureConfig q = opt.quadrature;
  q.radius = std::max(q.radius, 12.0);
  const Signal f = two_tone({3, 5}, 2, {9, 13}, 6);
  const PhaseSpaceGrid grid = PhaseSpaceGrid::uniform(1, Grid1D(-10, 25, 280), Grid1D(-4, 12, 128));
  std::vector<CheckReport> out;
  auto weak = [&](const SquareMatrix& m, bool expect) {
    const SupportReport r = support_report(m, f, grid, q);
    std::string proj = "empty";
    if (r.x_projection_hull)
      proj = std::to_string(r.x_projection_hull->lo[0]) + ":" + std::to_string(r.x_projection_hull->hi[0]);
    CheckReport c = make_report(expect ? "weak-time-support" : "weak-time-support-negative-control",
                                r.weak_time_holds == expect ? 0.0 : 1.0, 0.0,
                                {{"M", describe(m)}, {"x_projection", proj}});
    out.push_back(c);
  };
  if (opt.m) {
    weak(*opt.m, true);
    return out;
  }
  for (double tau : {0.0, 0.5, 1.0}) weak(SquareMatrix{{tau - 0.5}}, true);
  weak(SquareMatrix{{1.0}}, false);
  const SupportReport rih = support_report(SquareMatrix{{-0.5}}, Signal::tone(3, 5, 2), grid, q);
  out.push_back(make_report("rihaczek-strong-time-support", rih.outside_ratio, 1e-3,
                            {{"signal", "tone [3,5] freq 2"}}));
  return out;
}

std::vector<CheckReport> marginals(const SuiteOptions& opt) {
  const auto& q = opt.quadrature;
  const PhaseSpaceGrid grid = box_grid(1, 8.0, 256);
  std::vector<BlockMatrix> mats;
  if (opt.matrix) {
    mats = {*opt.matrix};
  } else {
    for (const auto& m : cohen_list(opt, {0.0, 0.25, -0.5})) mats.push_back(named::cohen(m));
    mats.push_back(BlockMatrix::from_full(SquareMatrix{{0.7, -0.4}, {0.5, 0.9}}));
  }
  std::vector<CheckReport> out;
  for (const auto& a : mats) {
    if (a.dim() != 1) fail(ErrorKind::Unsupported, "the marginal suite runs in d = 1");
    append(out, check_marginals(a, gauss(1, 1, 0.3, -0.5), grid, q));
    append(out, check_marginals(a, Signal::hermite(2), grid, q));
  }
  return out;
}

std::vector<CheckReport> gaussian_oracle_suite(const SuiteOptions& opt) {
  const auto& q = opt.quadrature;
  std::vector<CheckReport> out;
  std::vector<SquareMatrix> ms;
  if (opt.m)
    ms = {*opt.m};
  else
    ms = {SquareMatrix{{0.0}}, SquareMatrix{{0.25}}, SquareMatrix{{-0.4}}};
  for (const auto& m : ms) {
    const std::size_t d = m.dim();
    const std::size_t n = d == 1 ? 64 : 32;
    const PhaseSpaceGrid grid = PhaseSpaceGrid::uniform(d, Grid1D(-3, 3, n), Grid1D(-3, 3, n));
    const Signal f = Signal::gaussian(d, opt.lambda);
    const PhaseSpaceField field = d == 1 ? mwd(named::cohen(m), f, f, grid, q)
                                         : mwd_fft(named::cohen(m), f, f, grid, q);
    const double err = max_abs_diff(field, gaussian_oracle_field(m, opt.lambda, grid));
    out.push_back(make_report("gaussian-oracle", err, 1e-6,
                              {{"M", describe(m)},
                               {"lambda", std::to_string(opt.lambda)},
                               {"grid", describe(grid)}}));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"moyal",        "covariance", "stp",
                                              "inversion",    "characterization",
                                              "support",      "marginals",  "gaussian-oracle"};
  return names;
}

std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "moyal") return moyal(opt);
  if (name == "covariance") return covariance(opt);
  if (name == "stp") return stp(opt);
  if (name == "inversion") return inversion(opt);
  if (name == "characterization") return characterization(opt);
  if (name == "support") return support(opt);
  if (name == "marginals") return marginals(opt);
  if (name == "gaussian-oracle") return gaussian_oracle_suite(opt);
  if (name == "all") {
    std::vector<CheckReport> out;
    SuiteOptions defaults;
    defaults.quadrature = opt.quadrature;
    for (const auto& n : suite_names()) append(out, run_suite(n, defaults));
    return out;
  }
  fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace mwdlab
