#pragma once

#include <string>

#include "mwdlab/blockmat.hpp"
#include "mwdlab/identities.hpp"
#include "mwdlab/report.hpp"
#include "mwdlab/signals.hpp"

namespace mwdlab {

/// {"d": d, "A11": [[..]], "A12": .., "A21": .., "A22": ..}
std::string matrix_to_json(const BlockMatrix& a);
BlockMatrix matrix_from_json(const std::string& text);

/// Signal descriptions such as {"kind": "gaussian", "lambda": 1.0} or
/// {"kind": "tfshift", "x": 1, "omega": 0.5, "inner": {..}}. Sampled bodies
/// reference a signal CSV through "file" when parsed, and are written inline.
std::string signal_to_json(const Signal& f);
Signal signal_from_json(const std::string& text);

/// One line, no trailing newline.
std::string report_to_json(const CheckReport& r);
std::string diamond_to_json(const DiamondGeometry& g);

}  // namespace mwdlab
