#pragma once

#include <iosfwd>
#include <string>

#include "mwdlab/engine.hpp"
#include "mwdlab/signals.hpp"

namespace mwdlab {

/// Text format: "# mwdlab field v1", "# d=<d>", one "# x_axis=start:stop:count"
/// per dimension, then "# w_axis=..." lines, then rows "x..,w..,re,im".
void write_field_csv(const PhaseSpaceField& field, std::ostream& out);
PhaseSpaceField read_field_csv(std::istream& in);

/// "MWD1", u32 d, per axis (f64 start, f64 step, u32 count) x axes first,
/// then (re, im) f64 pairs row-major. Little-endian.
void write_field_binary(const PhaseSpaceField& field, std::ostream& out);
PhaseSpaceField read_field_binary(std::istream& in);

/// 16-bit P5 image of |value| scaled to [0, max]; x runs left to right and w
/// bottom to top. d = 1 only.
void write_field_pgm(const PhaseSpaceField& field, std::ostream& out);

/// "# mwdlab signal v1", "# axis=start:stop:count", rows "t,re,im". d = 1.
void write_signal_csv(const Signal& f, const Grid1D& axis, std::ostream& out);
Signal read_signal_csv(std::istream& in);

/// start:stop:count
Grid1D parse_axis(const std::string& text);
std::string format_axis(const Grid1D& axis);

void save_field(const PhaseSpaceField& field, const std::string& path, const std::string& format);
PhaseSpaceField load_field(const std::string& path);

}  // namespace mwdlab
