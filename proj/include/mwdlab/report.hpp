#pragma once

#include <map>
#include <string>

#include "mwdlab/blockmat.hpp"
#include "mwdlab/engine.hpp"

namespace mwdlab {

struct CheckReport {
  std::string name;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::map<std::string, std::string> details;
};

/// passed is set from max_abs_error <= tolerance; NaN never passes.
CheckReport make_report(std::string name, double max_abs_error, double tolerance,
                        std::map<std::string, std::string> details = {});

std::string describe(const SquareMatrix& m);
std::string describe(const BlockMatrix& a);
std::string describe(const Grid1D& axis);
std::string describe(const PhaseSpaceGrid& grid);

}  // namespace mwdlab
