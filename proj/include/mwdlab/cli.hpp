#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mwdlab/blockmat.hpp"
#include "mwdlab/engine.hpp"
#include "mwdlab/signals.hpp"

namespace mwdlab {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitNumericalGuard = 3,
};

/// Entry point of the mwdlab tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.25" or row-major "a,b,c,d"; the count must be a square.
SquareMatrix parse_square(const std::string& text);
/// Named matrix (wigner, tau, rihaczek, conj-rihaczek, stft, ambiguity,
/// cohen, identity), "file:<path>" or inline JSON.
BlockMatrix parse_matrix_spec(const std::string& spec, std::size_t d, double tau,
                              const std::string& m_text);
/// gauss:<lambda>[:<d>], hermite:<n>, tone:<a>:<b>:<freq>, file:<path>
/// (.json or signal CSV) or inline JSON.
Signal parse_signal_spec(const std::string& spec);
/// Comma-separated start:stop:count axes, d x-axes then d w-axes.
PhaseSpaceGrid parse_grid_spec(const std::string& spec);

}  // namespace mwdlab
