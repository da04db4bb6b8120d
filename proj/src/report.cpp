#include "mwdlab/report.hpp"

#include <cstdio>

namespace mwdlab {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

CheckReport make_report(std::string name, double max_abs_error, double tolerance,
                        std::map<std::string, std::string> details) {
  CheckReport r;
  r.name = std::move(name);
  r.max_abs_error = max_abs_error;
  r.tolerance = tolerance;
  r.passed = max_abs_error <= tolerance;
  r.details = std::move(details);
  return r;
}

std::string describe(const SquareMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.dim(); ++j) s += (j ? "," : "") + num(m(i, j));
    s += "]";
  }
  return s + "]";
}

std::string describe(const BlockMatrix& a) { return describe(a.full()); }

std::string describe(const Grid1D& axis) {
  return num(axis.start()) + ":" + num(axis.stop()) + ":" + std::to_string(axis.count());
}

std::string describe(const PhaseSpaceGrid& grid) {
  std::string s;
  for (const auto& a : grid.axes()) s += (s.empty() ? "" : ",") + describe(a);
  return s;
}

}  // namespace mwdlab
