#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwdlab/blockmat.hpp"
#include "mwdlab/report.hpp"
#include "mwdlab/signals.hpp"

namespace mwdlab {

struct SuiteOptions {
  std::optional<BlockMatrix> matrix;  ///< overrides the suite's default matrix
  std::optional<SquareMatrix> m;      ///< Cohen perturbation for Cohen suites
  double lambda = 1.0;                ///< Gaussian width for the oracle suite
  QuadratureConfig quadrature;
};

const std::vector<std::string>& suite_names();  ///< excludes "all"

/// Runs a named suite; "all" runs every suite with default options. Negative
/// controls are reported as passed when the identity fails as expected.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace mwdlab
