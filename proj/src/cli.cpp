#include "mwdlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mwdlab/cohen.hpp"
#include "mwdlab/error.hpp"
#include "mwdlab/field_io.hpp"
#include "mwdlab/identities.hpp"
#include "mwdlab/parallel.hpp"
#include "mwdlab/serialize.hpp"
#include "mwdlab/suites.hpp"

namespace mwdlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "not a number: '" + s + "'");
  }
  if (used != s.size()) fail(ErrorKind::Parse, "not a number: '" + s + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<double, double> parse_interval(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) fail(ErrorKind::Parse, "interval must be a:b, got '" + s + "'");
  return {to_double(parts[0]), to_double(parts[1])};
}

std::string format_from(const std::string& path, const std::string& format) {
  if (!format.empty()) return format;
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "bin" || ext == "mwd") return "bin";
  if (ext == "pgm") return "pgm";
  return "csv";
}

/// Writes to `path`, or to `out` for "-" / empty.
void emit_field(const PhaseSpaceField& field, const std::string& path, const std::string& format,
                std::ostream& out) {
  const std::string fmt = format_from(path, format);
  if (path.empty() || path == "-") {
    if (fmt == "csv")
      write_field_csv(field, out);
    else if (fmt == "bin")
      write_field_binary(field, out);
    else if (fmt == "pgm")
      write_field_pgm(field, out);
    else
      fail(ErrorKind::InvalidArgument, "unknown format '" + fmt + "'");
    return;
  }
  save_field(field, path, fmt);
}

struct Common {
  std::string matrix = "wigner";
  std::string m_text;
  double tau = 0.5;
  std::size_t dim = 1;
  std::string signal = "gauss:1";
  std::string signal2;
  std::string grid = "-4:4:128,-4:4:128";
  std::string out;
  std::string format;
  std::string method = "fft";
  double radius = 8.0;
  std::size_t samples = 0;
  bool allow_truncation = false;
  double lambda = 1.0;

  QuadratureConfig quadrature() const {
    QuadratureConfig q;
    q.radius = radius;
    q.samples_per_dim = samples;
    q.allow_truncation = allow_truncation;
    if (!(radius > 0.0)) fail(ErrorKind::InvalidArgument, "--radius must be positive");
    return q;
  }
};

void add_quadrature(CLI::App* app, Common& c) {
  app->add_option("--radius", c.radius, "Quadrature truncation radius R");
  app->add_option("--samples", c.samples, "Quadrature nodes per dimension (0 = default)");
  app->add_flag("--allow-truncation", c.allow_truncation, "Do not fail on fat integrand tails");
}

int do_compute(const Common& c, std::ostream& out) {
  const Signal f = parse_signal_spec(c.signal);
  const Signal g = c.signal2.empty() ? f : parse_signal_spec(c.signal2);
  const BlockMatrix a = parse_matrix_spec(c.matrix, std::max<std::size_t>(c.dim, f.dim()), c.tau, c.m_text);
  const PhaseSpaceGrid grid = parse_grid_spec(c.grid);
  const QuadratureConfig q = c.quadrature();
  PhaseSpaceField field;
  if (c.method == "fft")
    field = mwd_fft(a, f, g, grid, q);
  else if (c.method == "direct")
    field = mwd(a, f, g, grid, q);
  else
    fail(ErrorKind::InvalidArgument, "--method must be fft or direct");
  emit_field(field, c.out, c.format, out);
  return kExitOk;
}

int do_kernel(const Common& c, std::ostream& out) {
  if (c.m_text.empty()) fail(ErrorKind::InvalidArgument, "kernel needs --M");
  const SquareMatrix m = parse_square(c.m_text);
  const PhaseSpaceGrid grid = parse_grid_spec(c.grid);
  if (grid.dim() != m.dim()) fail(ErrorKind::InvalidArgument, "grid dimension does not match M");
  const CohenKernel k = theta(m);
  std::ostringstream buf;
  std::ostream& os = (c.out.empty() || c.out == "-") ? out : buf;
  const char* kind = k.kind == KernelKind::Chirp ? "chirp" : k.kind == KernelKind::Delta ? "delta" : "singular";
  os << "# mwdlab kernel v1\n# M=" << describe(m) << "\n# kind=" << kind << "\n";
  const std::size_t d = m.dim();
  std::vector<double> x(d), w(d);
  char line[512];
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    grid.x_point(ix, x);
    for (std::size_t iw = 0; iw < grid.w_count(); ++iw) {
      grid.w_point(iw, w);
      std::string row;
      for (double v : x) {
        std::snprintf(line, sizeof line, "%.17g,", v);
        row += line;
      }
      for (double v : w) {
        std::snprintf(line, sizeof line, "%.17g,", v);
        row += line;
      }
      const cplx th = k.kind == KernelKind::Chirp ? eval_theta(k, x, w) : cplx{NAN, NAN};
      const cplx Th = theta_hat(m, x, w);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", th.real(), th.imag(), Th.real(),
                    Th.imag());
      os << row << line;
    }
  }
  if (&os == &buf) {
    std::ofstream f(c.out);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot open '" + c.out + "'");
    f << buf.str();
  }
  return kExitOk;
}

int do_verify(const std::string& suite, const Common& c, bool matrix_given, std::ostream& out) {
  SuiteOptions opt;
  opt.quadrature = c.quadrature();
  opt.lambda = c.lambda;
  if (!c.m_text.empty()) opt.m = parse_square(c.m_text);
  if (matrix_given) opt.matrix = parse_matrix_spec(c.matrix, opt.m ? opt.m->dim() : c.dim, c.tau, c.m_text);
  const auto reports = run_suite(suite, opt);
  std::ostringstream buf;
  bool ok = true;
  for (const auto& r : reports) {
    buf << report_to_json(r) << "\n";
    ok = ok && r.passed;
  }
  if (c.out.empty() || c.out == "-") {
    out << buf.str();
  } else {
    std::ofstream f(c.out);
    if (!f) fail(ErrorKind::InvalidArgument, "cannot open '" + c.out + "'");
    f << buf.str();
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

struct Interfere {
  std::vector<double> m{0.0};
  std::string i1 = "3:5", i2 = "9:13";
  double w1 = 2.0, w2 = 6.0;
  std::string grid = "-10:25:280,-4:12:128";
  std::string prefix;
};

int do_interfere(const Interfere& it, const Common& c, std::ostream& out) {
  const auto i1 = parse_interval(it.i1), i2 = parse_interval(it.i2);
  QuadratureConfig q = c.quadrature();
  q.radius = std::max(q.radius, 2.0 * (i2.second - i1.first));
  const Signal f = two_tone(i1, it.w1, i2, it.w2);
  const PhaseSpaceGrid grid = parse_grid_spec(it.grid);
  for (std::size_t k = 0; k < it.m.size(); ++k) {
    const DiamondGeometry geom = diamond(it.m[k], i1, i2);
    out << diamond_to_json(geom) << "\n";
    if (it.prefix.empty()) continue;
    PhaseSpaceField field = mwd_fft(named::cohen(SquareMatrix::scalar(1, it.m[k])), f, f, grid, q);
    for (auto& v : field.values) v = std::abs(v);
    const std::string stem = it.m.size() == 1 ? it.prefix : it.prefix + "-" + std::to_string(k);
    save_field(field, stem + ".csv", "csv");
    save_field(field, stem + ".pgm", "pgm");
  }
  return kExitOk;
}

int do_oracle(const Common& c, std::ostream& out) {
  const SquareMatrix m = parse_square(c.m_text.empty() ? "0" : c.m_text);
  const PhaseSpaceGrid grid = parse_grid_spec(c.grid);
  if (grid.dim() != m.dim()) fail(ErrorKind::InvalidArgument, "grid dimension does not match M");
  emit_field(gaussian_oracle_field(m, c.lambda, grid), c.out, c.format, out);
  return kExitOk;
}

}  // namespace

SquareMatrix parse_square(const std::string& text) {
  std::vector<double> v;
  for (const auto& p : split(text, ',')) v.push_back(to_double(p));
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (v.empty() || d * d != v.size()) fail(ErrorKind::Parse, "matrix needs a square number of entries");
  for (double e : v)
    if (!std::isfinite(e)) fail(ErrorKind::Parse, "matrix entries must be finite");
  return SquareMatrix(d, std::move(v));
}

BlockMatrix parse_matrix_spec(const std::string& spec, std::size_t d, double tau,
                              const std::string& m_text) {
  if (spec.rfind("file:", 0) == 0) return matrix_from_json(read_file(spec.substr(5)));
  if (!spec.empty() && spec.front() == '{') return matrix_from_json(spec);
  if (spec == "cohen") {
    if (m_text.empty()) fail(ErrorKind::InvalidArgument, "--matrix cohen needs --M");
    return named::cohen(parse_square(m_text));
  }
  if (spec == "wigner") return named::wigner(d);
  if (spec == "tau") return named::tau(d, tau);
  if (spec == "rihaczek") return named::rihaczek(d);
  if (spec == "conj-rihaczek") return named::conj_rihaczek(d);
  if (spec == "stft") return named::stft(d);
  if (spec == "ambiguity") return named::ambiguity(d);
  if (spec == "identity") return named::identity(d);
  fail(ErrorKind::InvalidArgument, "unknown matrix '" + spec + "'");
}

Signal parse_signal_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return signal_from_json(spec);
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
      return signal_from_json(read_file(path));
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    return read_signal_csv(in);
  }
  const auto parts = split(spec, ':');
  if (parts.empty()) fail(ErrorKind::Parse, "empty signal spec");
  const std::string& kind = parts[0];
  if ((kind == "gauss" || kind == "gaussian") && (parts.size() == 2 || parts.size() == 3)) {
    const std::size_t d = parts.size() == 3 ? static_cast<std::size_t>(to_double(parts[2])) : 1;
    return Signal::gaussian(d, to_double(parts[1]));
  }
  if (kind == "hermite" && parts.size() == 2) {
    const double n = to_double(parts[1]);
    if (n < 0 || n != std::floor(n)) fail(ErrorKind::Parse, "hermite order must be a natural number");
    return Signal::hermite(static_cast<unsigned>(n));
  }
  if (kind == "tone" && parts.size() == 4)
    return Signal::tone(to_double(parts[1]), to_double(parts[2]), to_double(parts[3]));
  fail(ErrorKind::Parse, "cannot parse signal '" + spec + "'");
}

PhaseSpaceGrid parse_grid_spec(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.empty() || parts.size() % 2 != 0)
    fail(ErrorKind::Parse, "grid needs d x-axes followed by d w-axes");
  const std::size_t d = parts.size() / 2;
  std::vector<Grid1D> xs, ws;
  for (std::size_t k = 0; k < d; ++k) xs.push_back(parse_axis(parts[k]));
  for (std::size_t k = 0; k < d; ++k) ws.push_back(parse_axis(parts[d + k]));
  PhaseSpaceGrid grid(std::move(xs), std::move(ws));
  grid.check_size();
  return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-Wigner time-frequency distributions", "mwdlab"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: MWDLAB_THREADS or all cores)");

  Common c;
  auto add_matrix = [&](CLI::App* sub) {
    sub->add_option("--matrix", c.matrix, "Named matrix, file:<path> or inline JSON");
    sub->add_option("--M", c.m_text, "Cohen perturbation M, row-major comma list");
    sub->add_option("--tau", c.tau, "Parameter of --matrix tau");
    sub->add_option("--dim", c.dim, "Dimension for named matrices");
  };

  auto* compute = app.add_subcommand("compute", "Compute B_A(f, g) on a grid");
  add_matrix(compute);
  compute->add_option("--signal", c.signal, "f: gauss:<l>, hermite:<n>, tone:<a>:<b>:<freq>, file:, JSON");
  compute->add_option("--signal2", c.signal2, "g (default: f)");
  compute->add_option("--grid", c.grid, "x axes then w axes, start:stop:count each");
  compute->add_option("--out", c.out, "Output path (default stdout)");
  compute->add_option("--format", c.format, "csv, bin or pgm (default from extension)");
  compute->add_option("--method", c.method, "fft or direct");
  add_quadrature(compute, c);

  auto* kernel = app.add_subcommand("kernel", "Sample theta_M and Theta_M");
  kernel->add_option("--M", c.m_text, "Cohen perturbation M")->required();
  kernel->add_option("--grid", c.grid, "x axes then w axes");
  kernel->add_option("--out", c.out, "Output path (default stdout)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember([] {
        auto names = suite_names();
        names.push_back("all");
        return names;
      }()));
  add_matrix(verify);
  verify->add_option("--lambda", c.lambda, "Gaussian width for gaussian-oracle");
  verify->add_option("--out", c.out, "JSON-lines output path (default stdout)");
  add_quadrature(verify, c);

  Interfere it;
  auto* interfere = app.add_subcommand("interfere", "Two-tone interference geometry");
  interfere->add_option("--m", it.m, "Scalar perturbation(s) m");
  interfere->add_option("--i1", it.i1, "First interval a:b");
  interfere->add_option("--i2", it.i2, "Second interval a:b");
  interfere->add_option("--w1", it.w1, "First frequency");
  interfere->add_option("--w2", it.w2, "Second frequency");
  interfere->add_option("--grid", it.grid, "Field grid");
  interfere->add_option("--out-prefix", it.prefix, "Write <prefix>.csv and <prefix>.pgm");
  add_quadrature(interfere, c);

  auto* oracle = app.add_subcommand("oracle", "Gaussian closed form on a grid");
  oracle->add_option("--M", c.m_text, "Cohen perturbation M");
  oracle->add_option("--lambda", c.lambda, "Gaussian width");
  oracle->add_option("--grid", c.grid, "x axes then w axes");
  oracle->add_option("--out", c.out, "Output path (default stdout)");
  oracle->add_option("--format", c.format, "csv or bin");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (threads < 0) fail(ErrorKind::InvalidArgument, "--threads must be nonnegative");
    if (threads > 0) set_thread_count(static_cast<std::size_t>(threads));
    if (compute->parsed()) return do_compute(c, out);
    if (kernel->parsed()) return do_kernel(c, out);
    if (verify->parsed()) return do_verify(suite, c, verify->count("--matrix") > 0, out);
    if (interfere->parsed()) return do_interfere(it, c, out);
    if (oracle->parsed()) return do_oracle(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_numerical_guard() ? kExitNumericalGuard : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mwdlab
