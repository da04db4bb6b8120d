#include "mwdlab/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "mwdlab/error.hpp"

namespace mwdlab {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "not a number: '" + s + "'");
  }
  if (used != s.size()) fail(ErrorKind::Parse, "trailing characters in number: '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorKind::Parse, "not a count: '" + s + "'");
  return static_cast<std::size_t>(std::stoull(s));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

std::string expect_header(std::istream& in, const std::string& prefix) {
  std::string line;
  if (!std::getline(in, line) || !starts_with(line, prefix))
    fail(ErrorKind::Parse, "expected header line starting with '" + prefix + "'");
  return line.substr(prefix.size());
}

template <typename T>
void put_le(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get_le(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) fail(ErrorKind::Parse, "truncated binary field");
  return v;
}

}  // namespace

Grid1D parse_axis(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) fail(ErrorKind::Parse, "axis must be start:stop:count, got '" + text + "'");
  const double start = parse_double(parts[0]);
  const double stop = parse_double(parts[1]);
  const std::size_t count = parse_count(parts[2]);
  if (count < 2 || !(stop > start) || !std::isfinite(start) || !std::isfinite(stop))
    fail(ErrorKind::InvalidArgument, "axis needs count >= 2 and stop > start: '" + text + "'");
  return Grid1D(start, stop, count);
}

std::string format_axis(const Grid1D& axis) {
  return num(axis.start()) + ":" + num(axis.stop()) + ":" + std::to_string(axis.count());
}

void write_field_csv(const PhaseSpaceField& field, std::ostream& out) {
  const auto& grid = field.grid;
  const std::size_t d = grid.dim();
  out << "# mwdlab field v1\n# d=" << d << "\n";
  for (const auto& a : grid.x_axes) out << "# x_axis=" << format_axis(a) << "\n";
  for (const auto& a : grid.w_axes) out << "# w_axis=" << format_axis(a) << "\n";
  std::vector<double> x(d), w(d);
  std::string line;
  for (std::size_t ix = 0; ix < grid.x_count(); ++ix) {
    grid.x_point(ix, x);
    for (std::size_t iw = 0; iw < grid.w_count(); ++iw) {
      grid.w_point(iw, w);
      line.clear();
      for (double v : x) line += num(v) + ",";
      for (double v : w) line += num(v) + ",";
      const cplx z = field.at(ix, iw);
      line += num(z.real()) + "," + num(z.imag()) + "\n";
      out << line;
    }
  }
}

PhaseSpaceField read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# mwdlab field v1")
    fail(ErrorKind::Parse, "missing '# mwdlab field v1' header");
  const std::size_t d = parse_count(expect_header(in, "# d="));
  if (d == 0 || d > kMaxDim) fail(ErrorKind::Parse, "unsupported dimension");
  std::vector<Grid1D> xs, ws;
  for (std::size_t k = 0; k < d; ++k) xs.push_back(parse_axis(expect_header(in, "# x_axis=")));
  for (std::size_t k = 0; k < d; ++k) ws.push_back(parse_axis(expect_header(in, "# w_axis=")));
  PhaseSpaceField field(PhaseSpaceGrid(std::move(xs), std::move(ws)));
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 2 * d + 2) fail(ErrorKind::Parse, "row has the wrong number of columns");
    if (k >= field.values.size()) fail(ErrorKind::Parse, "more rows than the grid holds");
    field.values[k++] = {parse_double(cols[2 * d]), parse_double(cols[2 * d + 1])};
  }
  if (k != field.values.size()) fail(ErrorKind::Parse, "fewer rows than the grid holds");
  return field;
}

void write_field_binary(const PhaseSpaceField& field, std::ostream& out) {
  out.write("MWD1", 4);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.grid.dim()));
  for (const auto& a : field.grid.axes()) {
    put_le<double>(out, a.start());
    put_le<double>(out, a.step());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(a.count()));
  }
  for (const auto& z : field.values) {
    put_le<double>(out, z.real());
    put_le<double>(out, z.imag());
  }
}

PhaseSpaceField read_field_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "MWD1", 4) != 0)
    fail(ErrorKind::Parse, "missing MWD1 magic");
  const auto d = get_le<std::uint32_t>(in);
  if (d == 0 || d > kMaxDim) fail(ErrorKind::Parse, "unsupported dimension");
  std::vector<Grid1D> axes;
  for (std::uint32_t k = 0; k < 2 * d; ++k) {
    const double start = get_le<double>(in);
    const double step = get_le<double>(in);
    const auto count = get_le<std::uint32_t>(in);
    if (count < 2 || !(step > 0.0)) fail(ErrorKind::Parse, "bad axis in binary field");
    axes.push_back(Grid1D::from_step(start, step, count));
  }
  PhaseSpaceField field(PhaseSpaceGrid(std::vector<Grid1D>(axes.begin(), axes.begin() + d),
                                       std::vector<Grid1D>(axes.begin() + d, axes.end())));
  for (auto& z : field.values) {
    const double re = get_le<double>(in);
    z = {re, get_le<double>(in)};
  }
  return field;
}

void write_field_pgm(const PhaseSpaceField& field, std::ostream& out) {
  if (field.grid.dim() != 1) fail(ErrorKind::Unsupported, "PGM output needs d = 1");
  const std::size_t nx = field.grid.x_count(), nw = field.grid.w_count();
  const double peak = field.max_abs();
  out << "P5\n" << nx << " " << nw << "\n65535\n";
  for (std::size_t r = 0; r < nw; ++r) {
    const std::size_t iw = nw - 1 - r;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = peak > 0.0 ? std::abs(field.at(ix, iw)) / peak : 0.0;
      const auto level = static_cast<std::uint16_t>(std::lround(v * 65535.0));
      const char bytes[2] = {static_cast<char>(level >> 8), static_cast<char>(level & 0xff)};
      out.write(bytes, 2);
    }
  }
}

void write_signal_csv(const Signal& f, const Grid1D& axis, std::ostream& out) {
  if (f.dim() != 1) fail(ErrorKind::Unsupported, "signal CSV needs d = 1");
  out << "# mwdlab signal v1\n# axis=" << format_axis(axis) << "\n";
  for (std::size_t k = 0; k < axis.count(); ++k) {
    const double t = axis.point(k);
    const cplx z = f.evaluate(t);
    out << num(t) << "," << num(z.real()) << "," << num(z.imag()) << "\n";
  }
}

Signal read_signal_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# mwdlab signal v1")
    fail(ErrorKind::Parse, "missing '# mwdlab signal v1' header");
  const Grid1D axis = parse_axis(expect_header(in, "# axis="));
  std::vector<cplx> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 3) fail(ErrorKind::Parse, "signal row needs t,re,im");
    values.emplace_back(parse_double(cols[1]), parse_double(cols[2]));
  }
  if (values.size() != axis.count()) fail(ErrorKind::Parse, "row count does not match the axis");
  return Signal::sampled(axis, std::move(values), true);
}

void save_field(const PhaseSpaceField& field, const std::string& path, const std::string& format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "' for writing");
  if (format == "csv")
    write_field_csv(field, out);
  else if (format == "bin")
    write_field_binary(field, out);
  else if (format == "pgm")
    write_field_pgm(field, out);
  else
    fail(ErrorKind::InvalidArgument, "unknown format '" + format + "'");
  if (!out) fail(ErrorKind::InvalidArgument, "write to '" + path + "' failed");
}

PhaseSpaceField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  if (in.peek() == 'M') return read_field_binary(in);
  return read_field_csv(in);
}

}  // namespace mwdlab
